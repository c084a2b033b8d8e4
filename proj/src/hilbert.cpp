#include "gatom/hilbert.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>

namespace gatom {

namespace {

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

void require_levels(std::size_t levels, const char* who) {
  if (levels < 2) {
    throw std::invalid_argument(std::string(who) + ": levels must be >= 2, got " +
                                std::to_string(levels));
  }
}

void require_square(const Operator& op, const char* who) {
  if (op.rows() != op.cols()) {
    throw std::invalid_argument(std::string(who) + ": operator is not square");
  }
}

}  // namespace

HilbertSpec::HilbertSpec(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw std::invalid_argument("HilbertSpec: no subsystems");
  for (std::size_t d : dims_) {
    if (d < 2) {
      throw std::invalid_argument("HilbertSpec: every subsystem dimension must be >= 2, got " +
                                  std::to_string(d));
    }
    if (total_ > kMaxTotalDim / d) {
      throw std::invalid_argument("HilbertSpec: total dimension exceeds " +
                                  std::to_string(kMaxTotalDim));
    }
    total_ *= d;
  }
}

std::size_t HilbertSpec::dim(std::size_t slot) const {
  if (slot >= dims_.size()) {
    throw std::out_of_range("HilbertSpec: slot " + std::to_string(slot) + " out of range");
  }
  return dims_[slot];
}

std::size_t HilbertSpec::index(const std::vector<std::size_t>& levels) const {
  if (levels.size() != dims_.size()) {
    throw std::invalid_argument("HilbertSpec::index: expected one level per slot");
  }
  std::size_t flat = 0;
  for (std::size_t s = 0; s < dims_.size(); ++s) {
    if (levels[s] >= dims_[s]) throw std::out_of_range("HilbertSpec::index: level out of range");
    flat = flat * dims_[s] + levels[s];
  }
  return flat;
}

Operator identity(std::size_t dim) { return Operator::Identity(idx(dim), idx(dim)); }

Operator annihilation(std::size_t levels) {
  require_levels(levels, "annihilation");
  Operator a = Operator::Zero(idx(levels), idx(levels));
  for (std::size_t n = 1; n < levels; ++n) {
    a(idx(n - 1), idx(n)) = std::sqrt(static_cast<double>(n));
  }
  return a;
}

Operator creation(std::size_t levels) { return dagger(annihilation(levels)); }

Operator number(std::size_t levels) {
  require_levels(levels, "number");
  Operator n = Operator::Zero(idx(levels), idx(levels));
  for (std::size_t k = 0; k < levels; ++k) n(idx(k), idx(k)) = static_cast<double>(k);
  return n;
}

Operator transition(std::size_t levels, std::size_t row, std::size_t col) {
  require_levels(levels, "transition");
  if (row >= levels || col >= levels) throw std::out_of_range("transition: index out of range");
  Operator m = Operator::Zero(idx(levels), idx(levels));
  m(idx(row), idx(col)) = 1.0;
  return m;
}

Operator dagger(const Operator& op) { return op.adjoint(); }

Operator embed(const Operator& op, std::size_t slot, const HilbertSpec& spec) {
  require_square(op, "embed");
  if (slot >= spec.slots()) {
    throw std::out_of_range("embed: slot " + std::to_string(slot) + " out of range for " +
                            std::to_string(spec.slots()) + " subsystems");
  }
  if (static_cast<std::size_t>(op.rows()) != spec.dim(slot)) {
    throw std::invalid_argument("embed: operator dimension " + std::to_string(op.rows()) +
                                " does not match slot dimension " +
                                std::to_string(spec.dim(slot)));
  }
  std::size_t left = 1;
  for (std::size_t s = 0; s < slot; ++s) left *= spec.dim(s);
  std::size_t right = 1;
  for (std::size_t s = slot + 1; s < spec.slots(); ++s) right *= spec.dim(s);

  Operator lifted = Eigen::kroneckerProduct(identity(left), op).eval();
  return Eigen::kroneckerProduct(lifted, identity(right)).eval();
}

Operator commutator(const Operator& a, const Operator& b) { return a * b - b * a; }

StateVector fock_state(std::size_t levels, std::size_t n) {
  require_levels(levels, "fock_state");
  if (n >= levels) throw std::out_of_range("fock_state: n out of range");
  StateVector psi = StateVector::Zero(idx(levels));
  psi(idx(n)) = 1.0;
  return psi;
}

StateVector coherent_state(Complex amp, std::size_t levels) {
  require_levels(levels, "coherent_state");
  if (!std::isfinite(amp.real()) || !std::isfinite(amp.imag())) {
    throw std::invalid_argument("coherent_state: amplitude is not finite");
  }
  StateVector psi(idx(levels));
  // amp^n / sqrt(n!) built by recurrence.
  Complex term = 1.0;
  psi(0) = term;
  for (std::size_t n = 1; n < levels; ++n) {
    term *= amp / std::sqrt(static_cast<double>(n));
    psi(idx(n)) = term;
  }
  psi /= psi.norm();
  return psi;
}

StateVector product_state(const std::vector<StateVector>& factors) {
  if (factors.empty()) throw std::invalid_argument("product_state: no factors");
  StateVector psi = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) {
    psi = Eigen::kroneckerProduct(psi, factors[i]).eval();
  }
  return psi;
}

Complex expectation(const StateVector& psi, const Operator& op) {
  if (op.rows() != op.cols() || op.cols() != psi.size()) {
    throw std::invalid_argument("expectation: dimension mismatch (state " +
                                std::to_string(psi.size()) + ", operator " +
                                std::to_string(op.rows()) + "x" + std::to_string(op.cols()) + ")");
  }
  return psi.dot(op * psi);
}

double expectation_real(const StateVector& psi, const Operator& op) {
  return expectation(psi, op).real();
}

double norm_error(const StateVector& psi) { return std::abs(1.0 - psi.norm()); }

bool is_hermitian(const Operator& op, double rel_tol) {
  if (op.rows() != op.cols()) return false;
  const double scale = op.norm();
  const double diff = (op - op.adjoint()).norm();
  return diff <= rel_tol * (scale > 0.0 ? scale : 1.0);
}

}  // namespace gatom
