#ifndef SMX_IDS_HPP
#define SMX_IDS_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>

namespace smx {

/// Dense integer handle tagged by the table it indexes into. Handles from
/// different tables never compare or convert implicitly.
template <typename Tag>
struct Handle {
  std::uint32_t value = std::numeric_limits<std::uint32_t>::max();

  constexpr Handle() = default;
  constexpr explicit Handle(std::uint32_t v) : value{v} {}
  constexpr explicit Handle(std::size_t v) : value{static_cast<std::uint32_t>(v)} {}

  [[nodiscard]] constexpr std::size_t index() const { return value; }
  [[nodiscard]] constexpr bool valid() const {
    return value != std::numeric_limits<std::uint32_t>::max();
  }

  friend constexpr auto operator<=>(Handle, Handle) = default;
};

/// Node of a SemanticGraph (class or instance).
using NodeId = Handle<struct NodeTag>;
/// Predicate of a SemanticGraph.
using PredicateId = Handle<struct PredicateTag>;
/// Class of a TaxonomyView. The view owns its own class table because the
/// taxonomic reduction may add a virtual root that the graph does not have.
using ClassId = Handle<struct ClassTag>;

}  // namespace smx

template <typename Tag>
struct std::hash<smx::Handle<Tag>> {
  std::size_t operator()(smx::Handle<Tag> h) const noexcept {
    return std::hash<std::uint32_t>{}(h.value);
  }
};

#endif  // SMX_IDS_HPP
