#pragma once

// Dense density-matrix engine for registers of up to four qubits.
//
// Qubit ordering: qubit 0 is the most significant bit of the
// computational-basis index. For an n-qubit register, qubit q lives at bit
// (n - 1 - q). Every operation in this header follows that convention.

#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace ghzline::qdm {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Matrix2 = Eigen::Matrix2cd;

inline constexpr int kMaxQubits = 4;

/// Raised when a projective measurement selects an outcome whose
/// probability is below kZeroProbability.
class ZeroProbabilityBranch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kZeroProbability = 1e-12;

enum class Pauli : std::uint8_t { I, X, Y, Z };
enum class Basis : std::uint8_t { X, Y, Z };
enum class Outcome : std::int8_t { Plus = +1, Minus = -1 };

constexpr int sign_of(Outcome o) { return static_cast<int>(o); }

/// Normalized state vector over 0..4 qubits.
class PureState {
 public:
  /// Throws std::invalid_argument for non-power-of-two lengths, zero
  /// vectors, or norms further than 1e-9 from one; renormalizes otherwise.
  explicit PureState(Vector amplitudes);

  int num_qubits() const { return num_qubits_; }
  const Vector& amplitudes() const { return amplitudes_; }

 private:
  int num_qubits_;
  Vector amplitudes_;
};

class DensityMatrix {
 public:
  /// Rank-one projector |psi><psi|.
  static DensityMatrix from_pure(const PureState& psi);
  static DensityMatrix from_amplitudes(const Vector& amplitudes);
  static DensityMatrix maximally_mixed(int num_qubits);
  /// Wraps a matrix without checking physicality; callers that need the
  /// invariants call is_physical().
  static DensityMatrix from_matrix(Matrix m);

  int num_qubits() const { return num_qubits_; }
  Eigen::Index dim() const { return data_.rows(); }
  const Matrix& matrix() const { return data_; }
  Complex operator()(Eigen::Index i, Eigen::Index j) const { return data_(i, j); }

  Complex trace() const { return data_.trace(); }
  double purity() const;
  /// Largest entrywise deviation |rho_ij - conj(rho_ji)|.
  double hermiticity_error() const;
  double min_eigenvalue() const;
  /// Trace one and Hermitian within `tol`, eigenvalues above -1e-10.
  bool is_physical(double tol = 1e-12) const;

  /// Kronecker product; this register occupies the leading qubits.
  DensityMatrix tensor(const DensityMatrix& other) const;

  /// Largest entrywise |difference|.
  double max_abs_diff(const DensityMatrix& other) const;

 private:
  DensityMatrix(int n, Matrix m) : num_qubits_(n), data_(std::move(m)) {}

  int num_qubits_;
  Matrix data_;
};

/// Signed tensor product of single-qubit Paulis.
struct PauliString {
  std::vector<Pauli> factors;
  int sign = +1;

  /// Parses strings such as "XZI", "-YXZ" or "+IZY".
  static PauliString parse(std::string_view text);
  std::string to_string() const;
  std::size_t size() const { return factors.size(); }

  /// Full 2^n x 2^n operator including the sign.
  Matrix to_matrix() const;

  friend bool operator==(const PauliString&, const PauliString&) = default;
};

/// Product of two Pauli strings. `phase` is the power of i multiplying
/// the resulting (signed) string, in {0, 1, 2, 3}; phase 2 is folded into
/// the sign, so a commuting product always has phase 0.
struct PauliProduct {
  PauliString string;
  int phase = 0;
};
PauliProduct multiply(const PauliString& a, const PauliString& b);
bool commutes(const PauliString& a, const PauliString& b);

Matrix2 pauli_matrix(Pauli p);
Matrix2 hadamard();

/// Eigenvector of the basis operator with eigenvalue sign_of(outcome).
Eigen::Vector2cd basis_eigenvector(Basis basis, Outcome outcome);

DensityMatrix apply_single_qubit_unitary(const DensityMatrix& rho, int qubit, const Matrix2& u);

/// Ideal controlled-Z; symmetric in its two qubits.
DensityMatrix apply_cz(const DensityMatrix& rho, int q1, int q2);

/// (1 - alpha) rho + alpha Tr_q(rho) (x) I/2 on qubit q.
DensityMatrix depolarize(const DensityMatrix& rho, int qubit, double alpha);

/// (1 - lambda) rho + lambda Z rho Z on qubit q, lambda in [0, 1/2].
DensityMatrix dephase(const DensityMatrix& rho, int qubit, double lambda);

/// Controlled-Z that fails with probability `failure`; the failure branch
/// replaces both qubits with I4/4.
DensityMatrix noisy_cz(const DensityMatrix& rho, int q1, int q2, double failure);

struct Projection {
  double probability;
  DensityMatrix state;  // measured qubit removed
};

/// Projects `qubit` onto the outcome eigenstate of `basis`, removes it,
/// and renormalizes. Throws ZeroProbabilityBranch when the outcome is
/// impossible.
Projection measure_project(const DensityMatrix& rho, int qubit, Basis basis, Outcome outcome);

/// Probability of the outcome without forming the post-measurement state.
double outcome_probability(const DensityMatrix& rho, int qubit, Basis basis, Outcome outcome);

double pauli_expectation(const DensityMatrix& rho, const PauliString& s);

/// <psi| rho |psi>.
double fidelity_pure(const DensityMatrix& rho, const PureState& psi);

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> qubits_to_remove);

/// Inverse of partial_trace for maximally mixed factors: inserts I/2 at
/// each position in `positions` (indices into the enlarged register).
DensityMatrix insert_maximally_mixed(const DensityMatrix& rho, std::span<const int> positions);

}  // namespace ghzline::qdm
