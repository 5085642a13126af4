#pragma once
#include <algorithm>
#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "kdt/errors.hpp"

namespace kdt {

// Symbolic vertex closing the triangulation into a sphere; every hull edge
// borders one face incident to it.
constexpr int kInfinite = -1;

struct Triangle {
  std::array<int, 3> v{-2, -2, -2};
  std::array<int, 3> nbr{-2, -2, -2};  // nbr[i] faces v[i] across edge (v[i+1], v[i+2])

  bool has_vertex(int x) const { return v[0] == x || v[1] == x || v[2] == x; }
  int index_of(int x) const {
    for (int i = 0; i < 3; ++i)
      if (v[i] == x) return i;
    throw validation_failure("vertex not in triangle");
  }
  bool infinite() const { return has_vertex(kInfinite); }
};

// Undirected edge key; vertices may include kInfinite.
inline std::uint64_t edge_key(int u, int v) {
  std::uint64_t a = static_cast<std::uint64_t>(std::min(u, v) + 1);
  std::uint64_t b = static_cast<std::uint64_t>(std::max(u, v) + 1);
  return (a << 32) | b;
}

// Faces stored with consistent orientation: finite faces counterclockwise,
// and an infinite face (X, Y, inf)-cyclic stands for the hull edge Y->X
// (interior to the left of Y->X).
class TriangleMesh {
 public:
  int add_face(int a, int b, int c) {
    faces_.push_back(Triangle{{a, b, c}, {-2, -2, -2}});
    return static_cast<int>(faces_.size()) - 1;
  }
  Triangle& face(int f) { return faces_[static_cast<std::size_t>(f)]; }
  const Triangle& face(int f) const { return faces_[static_cast<std::size_t>(f)]; }
  int face_count() const { return static_cast<int>(faces_.size()); }

  // Index of the edge shared with f inside its i-th neighbor.
  int mirror_index(int f, int i) const {
    int g = face(f).nbr[static_cast<std::size_t>(i)];
    for (int j = 0; j < 3; ++j)
      if (face(g).nbr[static_cast<std::size_t>(j)] == f) return j;
    throw validation_failure("adjacency is not mutual");
  }
  int apex_across(int f, int i) const {
    int g = face(f).nbr[static_cast<std::size_t>(i)];
    return face(g).v[static_cast<std::size_t>(mirror_index(f, i))];
  }

  std::pair<int, int> edge_endpoints(int f, int i) const {
    return {face(f).v[static_cast<std::size_t>((i + 1) % 3)],
            face(f).v[static_cast<std::size_t>((i + 2) % 3)]};
  }

  // Flip the edge opposite vertex i of face f.  With c = f.v[i], shared edge
  // (A, B) as directed in f, and d the apex across, the faces become
  // (c, A, d) and (c, d, B); consistent orientation is preserved.  Face ids
  // are reused: f carries (c, A, d) and g carries (c, d, B).
  std::pair<int, int> flip(int f, int i) {
    int g = face(f).nbr[static_cast<std::size_t>(i)];
    int j = mirror_index(f, i);
    int c = face(f).v[static_cast<std::size_t>(i)];
    int A = face(f).v[static_cast<std::size_t>((i + 1) % 3)];
    int B = face(f).v[static_cast<std::size_t>((i + 2) % 3)];
    int d = face(g).v[static_cast<std::size_t>(j)];

    int nfA = face(f).nbr[static_cast<std::size_t>((i + 2) % 3)];  // across (c, A)
    int nfB = face(f).nbr[static_cast<std::size_t>((i + 1) % 3)];  // across (B, c)
    int ngA = face(g).nbr[static_cast<std::size_t>(slot_of_third(g, j, A))];  // across (A, d)
    int ngB = face(g).nbr[static_cast<std::size_t>(slot_of_third(g, j, B))];  // across (d, B)

    face(f) = Triangle{{c, A, d}, {ngA, g, nfA}};
    face(g) = Triangle{{c, d, B}, {ngB, nfB, f}};
    // nfA keeps pointing at f and ngB at g; the other two outer faces moved.
    replace_nbr(nfB, f, g);
    replace_nbr(ngA, g, f);
    return {f, g};
  }

  std::vector<std::array<int, 3>> canonical_triangles() const {
    std::vector<std::array<int, 3>> out;
    for (const auto& t : faces_) {
      if (t.infinite()) continue;
      std::array<int, 3> a = t.v;
      std::sort(a.begin(), a.end());
      out.push_back(a);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  // Counterclockwise cycle of hull vertices.
  std::vector<int> hull_cycle() const {
    std::vector<std::pair<int, int>> edges;  // hull edges src -> dst
    for (const auto& t : faces_) {
      if (!t.infinite()) continue;
      int k = t.index_of(kInfinite);
      int X = t.v[static_cast<std::size_t>((k + 1) % 3)];
      int Y = t.v[static_cast<std::size_t>((k + 2) % 3)];
      edges.emplace_back(Y, X);
    }
    std::vector<int> cycle;
    if (edges.empty()) return cycle;
    int start = edges.front().first, cur = start;
    for (std::size_t step = 0; step < edges.size(); ++step) {
      cycle.push_back(cur);
      bool found = false;
      for (auto& [s, d] : edges)
        if (s == cur) {
          cur = d;
          found = true;
          break;
        }
      if (!found) throw validation_failure("broken hull cycle");
    }
    if (cur != start) throw validation_failure("hull cycle does not close");
    return cycle;
  }

  // One (face, edge-index) anchor per undirected edge.
  std::vector<std::pair<int, int>> edge_anchors() const {
    std::vector<std::pair<int, int>> out;
    for (int f = 0; f < face_count(); ++f)
      for (int i = 0; i < 3; ++i)
        if (f < face(f).nbr[static_cast<std::size_t>(i)]) out.emplace_back(f, i);
    return out;
  }

  // Find the anchor of the undirected edge (u, v); returns {-1, -1} if the
  // edge is not present.
  std::pair<int, int> find_edge(int u, int v) const {
    for (int f = 0; f < face_count(); ++f)
      for (int i = 0; i < 3; ++i) {
        auto [a, b] = edge_endpoints(f, i);
        if ((a == u && b == v) || (a == v && b == u)) return {f, i};
      }
    return {-1, -1};
  }

  bool check_adjacency() const {
    for (int f = 0; f < face_count(); ++f) {
      for (int i = 0; i < 3; ++i) {
        int g = face(f).nbr[static_cast<std::size_t>(i)];
        if (g < 0 || g >= face_count()) return false;
        int j;
        try {
          j = mirror_index(f, i);
        } catch (const validation_failure&) {
          return false;
        }
        auto [a, b] = edge_endpoints(f, i);
        auto [c2, d2] = edge_endpoints(g, j);
        if (!(a == d2 && b == c2)) return false;
      }
    }
    return true;
  }

  void replace_nbr(int f, int old_nbr, int new_nbr) {
    for (int i = 0; i < 3; ++i)
      if (face(f).nbr[static_cast<std::size_t>(i)] == old_nbr) {
        face(f).nbr[static_cast<std::size_t>(i)] = new_nbr;
        return;
      }
    throw validation_failure("replace_nbr: stale neighbor not found");
  }

 private:
  // Slot of the vertex of g other than g.v[j] and x; its nbr entry is the
  // face across the edge (g.v[j], x).
  int slot_of_third(int g, int j, int x) const {
    for (int s = 0; s < 3; ++s) {
      if (s == j) continue;
      if (face(g).v[static_cast<std::size_t>(s)] != x) return s;
    }
    throw validation_failure("slot_of_third: edge vertex missing");
  }

  std::vector<Triangle> faces_;
};

}  // namespace kdt
