#pragma once
#include <stdexcept>
#include <string>

namespace kdt {

// Base class for all failures raised by the toolkit.
struct kdt_error : std::runtime_error {
  explicit kdt_error(const std::string& what) : std::runtime_error(what) {}
};

// A tuple of moving points whose event polynomial vanishes identically
// (e.g. a rigid translation of a co-circular quadruple).
struct degenerate_motion : kdt_error {
  explicit degenerate_motion(const std::string& what) : kdt_error(what) {}
};

// incircle query whose three base points are collinear at the query time.
struct collinear_base : kdt_error {
  explicit collinear_base(const std::string& what) : kdt_error(what) {}
};

// Two points coincide at the query time.
struct coincident_points : kdt_error {
  explicit coincident_points(const std::string& what) : kdt_error(what) {}
};

// The instance violates general position at the construction time.
struct degenerate_at_start : kdt_error {
  explicit degenerate_at_start(const std::string& what) : kdt_error(what) {}
};

// Two certified event times are exactly equal, or an event root has even
// multiplicity.  Both violate the general-position model.
struct tie_detected : kdt_error {
  explicit tie_detected(const std::string& what) : kdt_error(what) {}
};

struct instance_degenerate : kdt_error {
  explicit instance_degenerate(const std::string& what) : kdt_error(what) {}
};

// Internal bug trap: a structural invariant failed while debug validation
// was enabled.
struct validation_failure : kdt_error {
  explicit validation_failure(const std::string& what) : kdt_error(what) {}
};

struct precondition_violated : kdt_error {
  explicit precondition_violated(const std::string& what) : kdt_error(what) {}
};

struct generation_exhausted : kdt_error {
  explicit generation_exhausted(const std::string& what) : kdt_error(what) {}
};

struct parse_error : kdt_error {
  explicit parse_error(const std::string& what) : kdt_error(what) {}
};

}  // namespace kdt
