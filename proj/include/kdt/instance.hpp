#pragma once
#include <cmath>
#include <cstdint>
#include <istream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "kdt/errors.hpp"
#include "kdt/moving_point.hpp"
#include "kdt/poly.hpp"
#include "kdt/roots.hpp"

namespace kdt {

struct InstanceDocument {
  int schema_version = 1;
  std::string generator = "manual";
  std::uint64_t seed = 0;
  Rat window_lo = Rat(0), window_hi = Rat(10);
  std::vector<MovingPoint> points;
};

enum class GenKind { Uniform, Clustered, AdversarialTwoLines };

inline const char* to_string(GenKind k) {
  switch (k) {
    case GenKind::Uniform: return "uniform";
    case GenKind::Clustered: return "clustered";
    default: return "adversarial-two-lines";
  }
}

inline GenKind gen_kind_from_string(const std::string& s) {
  if (s == "uniform") return GenKind::Uniform;
  if (s == "clustered") return GenKind::Clustered;
  if (s == "adversarial-two-lines") return GenKind::AdversarialTwoLines;
  throw parse_error("unknown generator kind: " + s);
}

struct GenOptions {
  long position_grid = 1 << 20;  // positions j / grid inside the unit square
  long direction_m_max = 10000;  // Pythagorean parameter bound
  int max_retries = 4096;
};

namespace detail {

// Bounded draw from raw 64-bit output; bias is irrelevant at these ranges
// and the arithmetic is identical on every platform.
inline long draw(std::mt19937_64& rng, long lo, long hi) {
  return lo + static_cast<long>(rng() % static_cast<unsigned long>(hi - lo + 1));
}

inline void random_direction(std::mt19937_64& rng, long m_max, Rat& ux, Rat& uy) {
  long m = draw(rng, 2, m_max);
  long k = draw(rng, 1, m - 1);
  MovingPoint::unit_direction(m, k, ux, uy);
  if (draw(rng, 0, 1)) ux = -ux;
  if (draw(rng, 0, 1)) uy = -uy;
  if (draw(rng, 0, 1)) std::swap(ux, uy);
}

// General-position screening of a candidate against the accepted prefix, at
// the window start and over the whole motion where cheap: coincidence at any
// time is rejected via the squared-distance quadratic.
class PrefixChecker {
 public:
  explicit PrefixChecker(const Rat& t0) : t0_(t0) {}

  bool admissible(const std::vector<MovingPoint>& prefix, const MovingPoint& cand) const {
    Rat cx = cand.x_at(t0_), cy = cand.y_at(t0_);
    std::vector<Rat> px, py;
    px.reserve(prefix.size());
    py.reserve(prefix.size());
    for (const auto& p : prefix) {
      px.push_back(p.x_at(t0_));
      py.push_back(p.y_at(t0_));
    }
    for (std::size_t i = 0; i < prefix.size(); ++i) {
      // coincidence at any time: |p - cand|^2(t) has a real root
      Rat dx0 = prefix[i].x0 - cand.x0, dy0 = prefix[i].y0 - cand.y0;
      Rat dux = prefix[i].ux - cand.ux, duy = prefix[i].uy - cand.uy;
      TimePoly dist2({dx0 * dx0 + dy0 * dy0, 2 * (dx0 * dux + dy0 * duy),
                      dux * dux + duy * duy});
      if (dist2.is_zero()) return false;
      if (dist2.degree() == 0) {
        if (sign(dist2.coeff(0)) == 0) return false;
      } else if (!isolate_all_roots(dist2).empty()) {
        return false;
      }
    }
    // collinear triples at t0
    for (std::size_t i = 0; i < prefix.size(); ++i)
      for (std::size_t j = i + 1; j < prefix.size(); ++j) {
        Rat cr = (px[j] - px[i]) * (cy - py[i]) - (py[j] - py[i]) * (cx - px[i]);
        if (sign(cr) == 0) return false;
      }
    // co-circular quadruples at t0
    for (std::size_t i = 0; i < prefix.size(); ++i)
      for (std::size_t j = i + 1; j < prefix.size(); ++j)
        for (std::size_t k = j + 1; k < prefix.size(); ++k) {
          Rat ax = px[i] - cx, ay = py[i] - cy;
          Rat bx = px[j] - cx, by = py[j] - cy;
          Rat gx = px[k] - cx, gy = py[k] - cy;
          Rat az = ax * ax + ay * ay, bz = bx * bx + by * by, gz = gx * gx + gy * gy;
          Rat det = ax * (by * gz - bz * gy) - ay * (bx * gz - bz * gx) +
                    az * (bx * gy - by * gx);
          if (sign(det) == 0) return false;
        }
    return true;
  }

 private:
  Rat t0_;
};

}  // namespace detail

// Deterministic instance generation; same (kind, n, seed) yields a
// byte-identical document.  Degenerate candidates are rejected and resampled
// up to the retry budget.
inline InstanceDocument generate(GenKind kind, int n, std::uint64_t seed,
                                 const GenOptions& opt = {}) {
  if (n < 3) throw precondition_violated("generate: n must be at least 3");
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  InstanceDocument doc;
  doc.generator = to_string(kind);
  doc.seed = seed;

  detail::PrefixChecker checker(doc.window_lo);
  int retries = 0;

  // cluster layout (used by the clustered kind)
  int n_clusters = 1;
  std::vector<std::pair<long, long>> centers;
  if (kind == GenKind::Clustered) {
    n_clusters = std::max(2, static_cast<int>(std::sqrt(static_cast<double>(n))));
    for (int c = 0; c < n_clusters; ++c)
      centers.emplace_back(detail::draw(rng, opt.position_grid / 8, 7 * opt.position_grid / 8),
                           detail::draw(rng, opt.position_grid / 8, 7 * opt.position_grid / 8));
  }

  while (static_cast<int>(doc.points.size()) < n) {
    int idx = static_cast<int>(doc.points.size());
    Rat x, y, ux, uy;
    switch (kind) {
      case GenKind::Uniform: {
        x = Rat(detail::draw(rng, 0, opt.position_grid), opt.position_grid);
        y = Rat(detail::draw(rng, 0, opt.position_grid), opt.position_grid);
        detail::random_direction(rng, opt.direction_m_max, ux, uy);
        break;
      }
      case GenKind::Clustered: {
        auto [cxg, cyg] = centers[static_cast<std::size_t>(idx % n_clusters)];
        long spread = opt.position_grid / 16;
        x = Rat(cxg + detail::draw(rng, -spread, spread), opt.position_grid);
        y = Rat(cyg + detail::draw(rng, -spread, spread), opt.position_grid);
        detail::random_direction(rng, opt.direction_m_max, ux, uy);
        break;
      }
      case GenKind::AdversarialTwoLines: {
        // two opposing streams on nearly parallel lines; heuristic family,
        // no instance construction is prescribed for near-quadratic growth
        bool top = idx % 2 == 0;
        long jitter = detail::draw(rng, -opt.position_grid / 64, opt.position_grid / 64);
        x = Rat(detail::draw(rng, 0, opt.position_grid), opt.position_grid);
        y = Rat((top ? 3 * opt.position_grid / 4 : opt.position_grid / 4) + jitter,
                opt.position_grid);
        long m = detail::draw(rng, 40, 400);
        long k = detail::draw(rng, 1, 4);
        MovingPoint::unit_direction(m, k, ux, uy);
        if (!top) ux = -ux;
        if (detail::draw(rng, 0, 1)) uy = -uy;
        break;
      }
    }
    x.canonicalize();
    y.canonicalize();
    MovingPoint cand(idx, x, y, ux, uy);
    if (!checker.admissible(doc.points, cand)) {
      if (++retries > opt.max_retries)
        throw generation_exhausted("generate: retry budget exhausted");
      continue;
    }
    doc.points.push_back(std::move(cand));
  }
  return doc;
}

inline std::string serialize(const InstanceDocument& doc) {
  std::ostringstream os;
  os << "kdt-instance " << doc.schema_version << "\n";
  os << "generator " << doc.generator << "\n";
  os << "seed " << doc.seed << "\n";
  os << "window " << rat_to_string(doc.window_lo) << " " << rat_to_string(doc.window_hi)
     << "\n";
  os << "n " << doc.points.size() << "\n";
  for (const auto& p : doc.points)
    os << "p " << p.id << " " << rat_to_string(p.x0) << " " << rat_to_string(p.y0) << " "
       << rat_to_string(p.ux) << " " << rat_to_string(p.uy) << "\n";
  return os.str();
}

inline InstanceDocument parse_instance(std::istream& is) {
  InstanceDocument doc;
  std::string tag;
  if (!(is >> tag) || tag != "kdt-instance") throw parse_error("missing kdt-instance header");
  if (!(is >> doc.schema_version) || doc.schema_version != 1)
    throw parse_error("unsupported schema version");
  std::size_t n = 0;
  bool have_n = false;
  while (is >> tag) {
    if (tag == "generator") {
      is >> doc.generator;
    } else if (tag == "seed") {
      is >> doc.seed;
    } else if (tag == "window") {
      std::string a, b;
      is >> a >> b;
      doc.window_lo = rat_from_string(a);
      doc.window_hi = rat_from_string(b);
    } else if (tag == "n") {
      is >> n;
      have_n = true;
    } else if (tag == "p") {
      int id;
      std::string x, y, ux, uy;
      if (!(is >> id >> x >> y >> ux >> uy)) throw parse_error("truncated point line");
      try {
        doc.points.emplace_back(id, rat_from_string(x), rat_from_string(y),
                                rat_from_string(ux), rat_from_string(uy));
      } catch (const kdt_error& e) {
        throw parse_error(std::string("bad point: ") + e.what());
      }
    } else {
      throw parse_error("unknown tag in instance document: " + tag);
    }
  }
  if (have_n && doc.points.size() != n) throw parse_error("point count mismatch");
  return doc;
}

inline InstanceDocument parse_instance(const std::string& text) {
  std::istringstream is(text);
  return parse_instance(is);
}

// Perturb start positions by at most 1/2^50 each; used by the --jitter retry
// after a tie or tangency is detected.
inline InstanceDocument jitter_instance(const InstanceDocument& doc, std::uint64_t salt) {
  std::mt19937_64 rng(doc.seed * 1000003ULL + salt);
  InstanceDocument out = doc;
  const long den_shift = 50;
  for (auto& p : out.points) {
    Rat dx(static_cast<long>(rng() % 2001) - 1000, 1);
    Rat dy(static_cast<long>(rng() % 2001) - 1000, 1);
    Rat scale = Rat(1) / Rat(mpz_class(1) << den_shift);
    p.x0 += dx / 1000 * scale;
    p.y0 += dy / 1000 * scale;
    p.x0.canonicalize();
    p.y0.canonicalize();
  }
  return out;
}

}  // namespace kdt
