#pragma once
#include <array>
#include <vector>

#include "kdt/oracle.hpp"
#include "kdt/predicates.hpp"

namespace kdt {

// A census co-circularity with its pair classification filled in: the two
// opposite pairs are red-blue (the other two points straddle their line),
// the four adjacent pairs monochromatic.
struct ClassifiedCocircularity {
  CocircEvent event;
  bool extremal = false;  // index 1 or 3
  std::array<std::pair<int, int>, 2> redblue_pairs{};  // diagonals, by id
  int redblue_count = 0;  // always 2 in general position
};

// Whether the co-circularity of the quadruple at time t is red-blue with
// respect to the pair (u, v): the two remaining points straddle line uv.
inline bool redblue_for_pair(const std::vector<MovingPoint>& pts, std::size_t u,
                             std::size_t v, std::size_t w, std::size_t x,
                             const IsolatedRoot& t) {
  return orient_at(pts[u], pts[v], pts[w], t) * orient_at(pts[u], pts[v], pts[x], t) < 0;
}

inline std::vector<ClassifiedCocircularity> classify_events(
    const std::vector<MovingPoint>& pts, const GlobalEventCensus& census) {
  std::vector<std::size_t> index_of(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i)
    index_of[static_cast<std::size_t>(pts[i].id)] = i;

  std::vector<ClassifiedCocircularity> out;
  out.reserve(census.cocircularities.size());
  for (const auto& ev : census.cocircularities) {
    ClassifiedCocircularity c;
    c.event = ev;
    c.extremal = ev.index == 1 || ev.index == 3;
    std::array<std::size_t, 4> q{index_of[static_cast<std::size_t>(ev.quad[0])],
                                 index_of[static_cast<std::size_t>(ev.quad[1])],
                                 index_of[static_cast<std::size_t>(ev.quad[2])],
                                 index_of[static_cast<std::size_t>(ev.quad[3])]};
    static constexpr int pairs[6][4] = {{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2},
                                        {1, 2, 0, 3}, {1, 3, 0, 2}, {2, 3, 0, 1}};
    for (auto& pr : pairs) {
      if (redblue_for_pair(pts, q[static_cast<std::size_t>(pr[0])],
                           q[static_cast<std::size_t>(pr[1])],
                           q[static_cast<std::size_t>(pr[2])],
                           q[static_cast<std::size_t>(pr[3])], ev.time)) {
        if (c.redblue_count < 2)
          c.redblue_pairs[static_cast<std::size_t>(c.redblue_count)] = {
              ev.quad[static_cast<std::size_t>(pr[0])],
              ev.quad[static_cast<std::size_t>(pr[1])]};
        ++c.redblue_count;
      }
    }
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace kdt
