#include "gatom/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace gatom {

void TimeGrid::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("TimeGrid: dt must be > 0");
  if (!(t_end >= dt) || !std::isfinite(t_end)) {
    throw std::invalid_argument("TimeGrid: t_end must be >= dt");
  }
  if (sample_stride < 1) throw std::invalid_argument("TimeGrid: sample_stride must be >= 1");
  if (t_end / dt > 1e12) throw std::invalid_argument("TimeGrid: too many steps");
}

std::size_t TimeGrid::steps() const {
  const double ratio = t_end / dt;
  const double nearest = std::round(ratio);
  // 60/0.01 must give 6000 steps, not 6001.
  if (std::abs(ratio - nearest) <= 1e-9 * std::max(1.0, ratio)) {
    return static_cast<std::size_t>(nearest);
  }
  return static_cast<std::size_t>(std::ceil(ratio));
}

TimeGrid TimeGrid::with_min_samples(double t_end, double dt, std::size_t min_samples) {
  TimeGrid grid{t_end, dt, 1};
  grid.validate();
  const std::size_t n = grid.steps();
  const std::size_t intervals = std::max<std::size_t>(1, min_samples > 1 ? min_samples - 1 : 1);
  grid.sample_stride = std::max<std::size_t>(1, n / intervals);
  return grid;
}

Hamiltonian::Hamiltonian(Operator static_part) : static_(std::move(static_part)) {
  if (static_.rows() != static_.cols()) {
    throw std::invalid_argument("Hamiltonian: static part is not square");
  }
}

void Hamiltonian::add_term(DrivenTerm term) {
  if (term.op.rows() != static_.rows() || term.op.cols() != static_.cols()) {
    throw std::invalid_argument("Hamiltonian: driven term dimension mismatch");
  }
  if (!term.coeff) throw std::invalid_argument("Hamiltonian: driven term has no coefficient");
  adjoints_.push_back(term.op.adjoint());
  terms_.push_back(std::move(term));
}

Operator Hamiltonian::at(double t) const {
  Operator h = static_;
  for (std::size_t k = 0; k < terms_.size(); ++k) {
    const Complex c = terms_[k].coeff(t);
    h += c * terms_[k].op + std::conj(c) * adjoints_[k];
  }
  return h;
}

void Hamiltonian::apply(double t, const StateVector& psi, StateVector& out) const {
  out.noalias() = static_ * psi;
  for (std::size_t k = 0; k < terms_.size(); ++k) {
    const Complex c = terms_[k].coeff(t);
    if (c == Complex{}) continue;
    out.noalias() += c * (terms_[k].op * psi);
    out.noalias() += std::conj(c) * (adjoints_[k] * psi);
  }
}

double Hamiltonian::settle_time() const {
  double settle = 0.0;
  for (const auto& term : terms_) settle = std::max(settle, term.settles_at);
  return settle;
}

Trajectory::Trajectory(std::vector<std::string> channel_names)
    : names_(std::move(channel_names)), values_(names_.size()) {}

void Trajectory::push_sample(double t, const std::vector<Complex>& values, double norm_err) {
  if (values.size() != names_.size()) {
    throw std::invalid_argument("Trajectory: sample has wrong number of channels");
  }
  times_.push_back(t);
  for (std::size_t c = 0; c < values.size(); ++c) values_[c].push_back(values[c]);
  norm_err_.push_back(norm_err);
}

std::size_t Trajectory::channel_index(const std::string& name) const {
  const auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw std::out_of_range("Trajectory: no channel '" + name + "'");
  return static_cast<std::size_t>(it - names_.begin());
}

bool Trajectory::has_channel(const std::string& name) const {
  return std::find(names_.begin(), names_.end(), name) != names_.end();
}

std::span<const Complex> Trajectory::channel(const std::string& name) const {
  return values_[channel_index(name)];
}

std::vector<Complex>& Trajectory::mutable_channel(const std::string& name) {
  return values_[channel_index(name)];
}

std::vector<double> Trajectory::real(const std::string& name) const {
  const auto values = channel(name);
  std::vector<double> out(values.size());
  std::transform(values.begin(), values.end(), out.begin(), [](Complex z) { return z.real(); });
  return out;
}

double Trajectory::max_norm_error() const {
  return norm_err_.empty() ? 0.0 : *std::max_element(norm_err_.begin(), norm_err_.end());
}

namespace {

std::string diverged_message(double t, double err) {
  std::ostringstream os;
  os << "integration diverged at t = " << t << " ns (norm error " << err << ")";
  return os.str();
}

}  // namespace

IntegrationDiverged::IntegrationDiverged(double t, double norm_err)
    : std::runtime_error(diverged_message(t, norm_err)), time_(t), norm_err_(norm_err) {}

namespace {

class Rk4Stepper {
 public:
  explicit Rk4Stepper(Eigen::Index n) : k1_(n), k2_(n), k3_(n), k4_(n), tmp_(n) {}

  void step(const Hamiltonian& h, double t, double dt, StateVector& psi) {
    const double half = 0.5 * dt;
    h.apply(t, psi, k1_);
    k1_ *= -kI;
    tmp_ = psi + half * k1_;
    h.apply(t + half, tmp_, k2_);
    k2_ *= -kI;
    tmp_ = psi + half * k2_;
    h.apply(t + half, tmp_, k3_);
    k3_ *= -kI;
    tmp_ = psi + dt * k3_;
    h.apply(t + dt, tmp_, k4_);
    k4_ *= -kI;
    k1_ += 2.0 * k2_;
    k1_ += 2.0 * k3_;
    k1_ += k4_;
    psi.noalias() += (dt / 6.0) * k1_;
  }

 private:
  StateVector k1_, k2_, k3_, k4_, tmp_;
};

// e^{-iH(t - t0)} applied through the eigenbasis of a constant Hermitian H.
class ExactPropagator {
 public:
  ExactPropagator(const Operator& h, const StateVector& psi_t0, double t0) : t0_(t0) {
    Eigen::SelfAdjointEigenSolver<Operator> solver(h);
    if (solver.info() != Eigen::Success) {
      throw std::runtime_error("exact propagator: eigendecomposition failed");
    }
    vectors_ = solver.eigenvectors();
    energies_ = solver.eigenvalues();
    coeffs_ = vectors_.adjoint() * psi_t0;
  }

  StateVector at(double t) const {
    StateVector rotated(coeffs_.size());
    const double tau = t - t0_;
    for (Eigen::Index i = 0; i < coeffs_.size(); ++i) {
      rotated(i) = coeffs_(i) * std::exp(-kI * (energies_(i) * tau));
    }
    return vectors_ * rotated;
  }

 private:
  double t0_;
  Operator vectors_;
  Eigen::VectorXd energies_;
  StateVector coeffs_;
};

}  // namespace

void rk4_step(const Hamiltonian& h, double t, double dt, StateVector& psi) {
  Rk4Stepper(psi.size()).step(h, t, dt, psi);
}

Trajectory integrate(const Hamiltonian& h, const StateVector& psi0, const TimeGrid& grid,
                     const std::vector<Observable>& observables,
                     const IntegratorOptions& options) {
  grid.validate();
  if (static_cast<std::size_t>(psi0.size()) != h.dim()) {
    throw std::invalid_argument("integrate: state dimension " + std::to_string(psi0.size()) +
                                " does not match Hamiltonian dimension " +
                                std::to_string(h.dim()));
  }
  if (norm_error(psi0) > 1e-9) throw std::invalid_argument("integrate: initial state not normalized");

  std::vector<std::string> names;
  for (const auto& obs : observables) {
    if (static_cast<std::size_t>(obs.op.rows()) != h.dim() || obs.op.rows() != obs.op.cols()) {
      throw std::invalid_argument("integrate: observable '" + obs.name + "' dimension mismatch");
    }
    names.push_back(obs.name);
  }
  Trajectory traj(std::move(names));

  const std::size_t steps = grid.steps();
  const double dt = grid.dt;

  // First step index from which the exact propagator takes over.
  std::size_t exact_from = steps + 1;
  if (options.method == Method::automatic) {
    const double settle = h.settle_time();
    if (std::isfinite(settle)) {
      const double n = std::ceil(settle / dt - 1e-9);
      if (n <= static_cast<double>(steps)) exact_from = static_cast<std::size_t>(std::max(0.0, n));
    }
  }

  std::vector<Complex> values(observables.size());
  auto record = [&](std::size_t n, const StateVector& psi) {
    const double t = static_cast<double>(n) * dt;
    const double err = norm_error(psi);
    if (!(err <= options.norm_tolerance)) throw IntegrationDiverged(t, err);
    for (std::size_t k = 0; k < observables.size(); ++k) {
      values[k] = expectation(psi, observables[k].op);
    }
    traj.push_sample(t, values, err);
  };
  auto is_sample = [&](std::size_t n) { return n % grid.sample_stride == 0 || n == steps; };

  StateVector psi = psi0;
  Rk4Stepper stepper(psi.size());
  std::size_t n = 0;
  if (is_sample(0)) record(0, psi);
  for (; n < std::min(exact_from, steps); ++n) {
    stepper.step(h, static_cast<double>(n) * dt, dt, psi);
    if (is_sample(n + 1)) record(n + 1, psi);
  }
  if (exact_from <= steps) {
    const double t0 = static_cast<double>(exact_from) * dt;
    const ExactPropagator propagator(h.at(t0), psi, t0);
    for (std::size_t m = exact_from + 1; m <= steps; ++m) {
      if (!is_sample(m)) continue;
      psi = propagator.at(static_cast<double>(m) * dt);
      record(m, psi);
    }
    psi = propagator.at(static_cast<double>(steps) * dt);
  }
  traj.final_state = psi;
  return traj;
}

std::optional<double> estimate_inversion_time(std::span<const double> times,
                                              std::span<const double> values, double threshold) {
  if (!(threshold > 0.0 && threshold <= 1.0)) {
    throw std::invalid_argument("estimate_inversion_time: threshold must lie in (0, 1]");
  }
  if (times.size() != values.size()) {
    throw std::invalid_argument("estimate_inversion_time: times/values size mismatch");
  }
  for (std::size_t i = 1; i + 1 < values.size(); ++i) {
    // Strict rise into i, non-strict fall out of it: plateaus resolve to their first sample.
    if (values[i] < threshold || !(values[i] > values[i - 1]) || values[i] < values[i + 1]) {
      continue;
    }
    const double x0 = times[i - 1], x1 = times[i], x2 = times[i + 1];
    const double y0 = values[i - 1], y1 = values[i], y2 = values[i + 1];
    const double denom = (x0 - x1) * (x0 - x2) * (x1 - x2);
    const double a = (x2 * (y1 - y0) + x1 * (y0 - y2) + x0 * (y2 - y1)) / denom;
    const double b = (x2 * x2 * (y0 - y1) + x1 * x1 * (y2 - y0) + x0 * x0 * (y1 - y2)) / denom;
    if (!(a < 0.0)) return x1;
    return std::clamp(-b / (2.0 * a), x0, x2);
  }
  return std::nullopt;
}

}  // namespace gatom
