// Time-dependent Schrödinger integration and observable sampling.
#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "gatom/hilbert.hpp"

namespace gatom {

struct TimeGrid {
  double t_end = 0.0;  // ns
  double dt = 0.0;     // ns
  std::size_t sample_stride = 1;

  void validate() const;
  std::size_t steps() const;

  /// Grid whose stride yields at least `min_samples` samples over the run.
  static TimeGrid with_min_samples(double t_end, double dt, std::size_t min_samples);
};

/// Contributes c(t)·op + conj(c(t))·op† to the Hamiltonian. The coefficient
/// must be constant for t >= settles_at.
struct DrivenTerm {
  Operator op;
  std::function<Complex(double)> coeff;
  double settles_at = std::numeric_limits<double>::infinity();
};

/// H(t) = static_part + Σ_k [c_k(t) A_k + conj(c_k(t)) A_k†].
class Hamiltonian {
 public:
  explicit Hamiltonian(Operator static_part);

  void add_term(DrivenTerm term);

  std::size_t dim() const { return static_cast<std::size_t>(static_.rows()); }
  const Operator& static_part() const { return static_; }
  const std::vector<DrivenTerm>& terms() const { return terms_; }

  Operator at(double t) const;

  // out = H(t)·psi
  void apply(double t, const StateVector& psi, StateVector& out) const;

  // Earliest time after which H no longer changes; 0 when time-independent.
  double settle_time() const;
  bool time_independent() const { return settle_time() == 0.0; }

 private:
  Operator static_;
  std::vector<DrivenTerm> terms_;
  std::vector<Operator> adjoints_;
};

struct Observable {
  std::string name;
  Operator op;
};

class Trajectory {
 public:
  Trajectory() = default;
  explicit Trajectory(std::vector<std::string> channel_names);

  void push_sample(double t, const std::vector<Complex>& values, double norm_err);

  std::size_t size() const { return times_.size(); }
  const std::vector<double>& times() const { return times_; }
  const std::vector<double>& norm_errors() const { return norm_err_; }
  const std::vector<std::string>& channel_names() const { return names_; }

  bool has_channel(const std::string& name) const;
  std::span<const Complex> channel(const std::string& name) const;
  std::vector<double> real(const std::string& name) const;

  // Replaces a channel's values in place; used for frame corrections.
  std::vector<Complex>& mutable_channel(const std::string& name);

  double max_norm_error() const;

  StateVector final_state;

 private:
  std::size_t channel_index(const std::string& name) const;

  std::vector<std::string> names_;
  std::vector<double> times_;
  std::vector<std::vector<Complex>> values_;
  std::vector<double> norm_err_;
};

class IntegrationDiverged : public std::runtime_error {
 public:
  IntegrationDiverged(double t, double norm_err);
  double time() const { return time_; }
  double norm_error() const { return norm_err_; }

 private:
  double time_;
  double norm_err_;
};

enum class Method {
  automatic,  // exact propagator once H stops changing, RK4 before
  rk4,
};

struct IntegratorOptions {
  Method method = Method::automatic;
  double norm_tolerance = 1e-6;
};

/// Integrates dψ/dt = -i H(t) ψ over the grid with classical RK4 and records
/// every observable at each sample. Sample times are n·dt for integer n, so
/// the last sample sits at steps()·dt. The state is never renormalized.
Trajectory integrate(const Hamiltonian& h, const StateVector& psi0, const TimeGrid& grid,
                     const std::vector<Observable>& observables,
                     const IntegratorOptions& options = {});

// Single RK4 step from t to t + dt.
void rk4_step(const Hamiltonian& h, double t, double dt, StateVector& psi);

/// Time of the first local maximum of `values` that reaches `threshold`,
/// refined by a three-point parabola. Empty when no such peak exists.
std::optional<double> estimate_inversion_time(std::span<const double> times,
                                              std::span<const double> values, double threshold);

}  // namespace gatom
