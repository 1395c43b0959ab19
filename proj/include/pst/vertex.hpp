#pragma once

#include <cstddef>

namespace pst {

/// Vertex label, 1-based as in the literature and in every file format.
struct Vertex {
  std::size_t label = 1;

  constexpr std::size_t index() const noexcept { return label - 1; }
  static constexpr Vertex from_index(std::size_t i) noexcept { return Vertex{i + 1}; }
  friend constexpr bool operator==(Vertex, Vertex) = default;
};

}  // namespace pst
