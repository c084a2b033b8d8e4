// Truncated Fock-space operator algebra.
#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace gatom {

using Complex = std::complex<double>;
using Operator = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;

inline constexpr Complex kI{0.0, 1.0};

/// Ordered list of subsystem dimensions. Slot 0 is the leftmost Kronecker
/// factor, so its index varies slowest in the flattened basis.
class HilbertSpec {
 public:
  static constexpr std::size_t kMaxTotalDim = 1'000'000;

  explicit HilbertSpec(std::vector<std::size_t> dims);

  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t dim(std::size_t slot) const;
  std::size_t slots() const { return dims_.size(); }
  std::size_t total() const { return total_; }

  // Flattened index of a product basis state, one level per slot.
  std::size_t index(const std::vector<std::size_t>& levels) const;

 private:
  std::vector<std::size_t> dims_;
  std::size_t total_ = 1;
};

Operator identity(std::size_t dim);

// a|n> = sqrt(n)|n-1>
Operator annihilation(std::size_t levels);
Operator creation(std::size_t levels);
Operator number(std::size_t levels);

// |row><col| on a single subsystem.
Operator transition(std::size_t levels, std::size_t row, std::size_t col);

Operator dagger(const Operator& op);

// I (x) ... (x) op (x) ... (x) I with op at `slot`.
Operator embed(const Operator& op, std::size_t slot, const HilbertSpec& spec);

Operator commutator(const Operator& a, const Operator& b);

StateVector fock_state(std::size_t levels, std::size_t n);

/// Truncated coherent state: amplitudes proportional to amp^n/sqrt(n!),
/// renormalized over the kept levels.
StateVector coherent_state(Complex amp, std::size_t levels);

// Kronecker product of per-slot states, in slot order.
StateVector product_state(const std::vector<StateVector>& factors);

Complex expectation(const StateVector& psi, const Operator& op);
double expectation_real(const StateVector& psi, const Operator& op);

double norm_error(const StateVector& psi);

bool is_hermitian(const Operator& op, double rel_tol = 1e-12);

}  // namespace gatom
