#ifndef STAGFV_CORE_HPP
#define STAGFV_CORE_HPP

#include <cmath>
#include <stdexcept>
#include <string>

namespace stagfv {

// Planar vector; 1D configurations leave y at zero.
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  double& operator[](int i) { return i == 0 ? x : y; }
  double operator[](int i) const { return i == 0 ? x : y; }

  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  Vec2 operator-() const { return {-x, -y}; }

  double dot(const Vec2& o) const { return x * o.x + y * o.y; }
  double norm() const { return std::hypot(x, y); }
};

inline Vec2 operator*(double s, const Vec2& v) { return v * s; }

// Invalid user input (config file, CLI arguments, bad preconditions on
// user-facing builders).  Maps to exit code 2 in the CLI.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Runtime failure of the solver (NaN, non-finite state).  Exit code 3.
struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Density or internal energy dropped to zero or below; carries the cell
// and step where it happened.
struct PositivityError : SolverError {
  PositivityError(const std::string& field, int cell, long step)
      : SolverError("positivity violation: " + field + " <= 0 in cell " +
                    std::to_string(cell) + " at step " + std::to_string(step)),
        field(field),
        cell(cell),
        step(step) {}
  std::string field;
  int cell;
  long step;
};

}  // namespace stagfv

#endif
