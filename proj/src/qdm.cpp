#include "ghzline/qdm.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ghzline::qdm {

namespace {

using Index = Eigen::Index;

constexpr Complex kI{0.0, 1.0};

int qubits_for_dim(Index dim) {
  if (dim < 1) return -1;
  int n = 0;
  while ((Index{1} << n) < dim) ++n;
  return (Index{1} << n) == dim ? n : -1;
}

Index bit_of(int num_qubits, int qubit) { return Index{1} << (num_qubits - 1 - qubit); }

void check_qubit(const DensityMatrix& rho, int qubit) {
  if (qubit < 0 || qubit >= rho.num_qubits()) {
    std::ostringstream msg;
    msg << "qubit index " << qubit << " out of range for " << rho.num_qubits() << "-qubit register";
    throw std::out_of_range(msg.str());
  }
}

void check_pair(const DensityMatrix& rho, int q1, int q2) {
  check_qubit(rho, q1);
  check_qubit(rho, q2);
  if (q1 == q2) throw std::invalid_argument("two-qubit gate needs distinct qubits");
}

void check_probability(double p, double hi, const char* what) {
  if (!(p >= 0.0 && p <= hi)) {
    std::ostringstream msg;
    msg << what << " = " << p << " outside [0, " << hi << "]";
    throw std::invalid_argument(msg.str());
  }
}

// Inserts bit value `s` at bit position `pos` (counted from the LSB).
Index insert_bit(Index a, int pos, Index s) {
  const Index low = a & ((Index{1} << pos) - 1);
  const Index high = (a >> pos) << (pos + 1);
  return high | (s << pos) | low;
}

// Maps (kept-subregister index, traced-subregister index) to a full index.
struct Scatter {
  std::vector<Index> kept_masks;    // full-register masks, in kept-qubit order
  std::vector<Index> traced_masks;  // full-register masks, in traced-qubit order

  static Index spread(Index compact, const std::vector<Index>& masks) {
    Index full = 0;
    const auto k = static_cast<int>(masks.size());
    for (int i = 0; i < k; ++i) {
      if ((compact >> (k - 1 - i)) & 1) full |= masks[static_cast<std::size_t>(i)];
    }
    return full;
  }
  Index full(Index kept, Index traced) const { return spread(kept, kept_masks) | spread(traced, traced_masks); }
};

Scatter make_scatter(int num_qubits, std::span<const int> traced) {
  std::vector<bool> is_traced(static_cast<std::size_t>(num_qubits), false);
  for (int q : traced) {
    if (q < 0 || q >= num_qubits) throw std::out_of_range("qubit index out of range in index set");
    if (is_traced[static_cast<std::size_t>(q)]) throw std::invalid_argument("duplicate qubit in index set");
    is_traced[static_cast<std::size_t>(q)] = true;
  }
  Scatter s;
  for (int q = 0; q < num_qubits; ++q) {
    (is_traced[static_cast<std::size_t>(q)] ? s.traced_masks : s.kept_masks).push_back(bit_of(num_qubits, q));
  }
  return s;
}

}  // namespace

// ---------------------------------------------------------------------------
// PureState / DensityMatrix

PureState::PureState(Vector amplitudes) : amplitudes_(std::move(amplitudes)) {
  num_qubits_ = qubits_for_dim(amplitudes_.size());
  if (num_qubits_ < 0 || num_qubits_ > kMaxQubits) {
    throw std::invalid_argument("amplitude vector length must be a power of two up to 16");
  }
  const double norm = amplitudes_.norm();
  if (norm == 0.0) throw std::invalid_argument("zero amplitude vector");
  if (std::abs(norm - 1.0) > 1e-9) throw std::invalid_argument("amplitude vector is not normalized");
  amplitudes_ /= norm;
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
  const Vector& v = psi.amplitudes();
  return DensityMatrix(psi.num_qubits(), v * v.adjoint());
}

DensityMatrix DensityMatrix::from_amplitudes(const Vector& amplitudes) { return from_pure(PureState(amplitudes)); }

DensityMatrix DensityMatrix::maximally_mixed(int num_qubits) {
  if (num_qubits < 0 || num_qubits > kMaxQubits) throw std::invalid_argument("register size out of range");
  const Index d = Index{1} << num_qubits;
  return DensityMatrix(num_qubits, Matrix::Identity(d, d) / static_cast<double>(d));
}

DensityMatrix DensityMatrix::from_matrix(Matrix m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("density matrix must be square");
  const int n = qubits_for_dim(m.rows());
  if (n < 0 || n > kMaxQubits) throw std::invalid_argument("density matrix dimension must be a power of two up to 16");
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-10) throw std::invalid_argument("density matrix is not Hermitian");
  return DensityMatrix(n, std::move(m));
}

double DensityMatrix::purity() const { return (data_ * data_).trace().real(); }

double DensityMatrix::hermiticity_error() const { return (data_ - data_.adjoint()).cwiseAbs().maxCoeff(); }

double DensityMatrix::min_eigenvalue() const {
  const Matrix herm = (data_ + data_.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(herm, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

bool DensityMatrix::is_physical(double tol) const {
  return std::abs(trace() - Complex{1.0, 0.0}) <= tol && hermiticity_error() <= tol && min_eigenvalue() >= -1e-10;
}

DensityMatrix DensityMatrix::tensor(const DensityMatrix& other) const {
  const int n = num_qubits_ + other.num_qubits_;
  if (n > kMaxQubits) throw std::invalid_argument("tensor product exceeds the register limit");
  const Index db = other.dim();
  Matrix out(dim() * db, dim() * db);
  for (Index i = 0; i < dim(); ++i)
    for (Index j = 0; j < dim(); ++j) out.block(i * db, j * db, db, db) = data_(i, j) * other.data_;
  return DensityMatrix(n, std::move(out));
}

double DensityMatrix::max_abs_diff(const DensityMatrix& other) const {
  if (dim() != other.dim()) throw std::invalid_argument("dimension mismatch");
  return (data_ - other.data_).cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------
// Pauli strings

PauliString PauliString::parse(std::string_view text) {
  PauliString s;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    s.sign = text.front() == '-' ? -1 : +1;
    text.remove_prefix(1);
  }
  for (char c : text) {
    switch (c) {
      case 'I': s.factors.push_back(Pauli::I); break;
      case 'X': s.factors.push_back(Pauli::X); break;
      case 'Y': s.factors.push_back(Pauli::Y); break;
      case 'Z': s.factors.push_back(Pauli::Z); break;
      default: throw std::invalid_argument(std::string("bad Pauli character '") + c + "'");
    }
  }
  return s;
}

std::string PauliString::to_string() const {
  std::string out = sign < 0 ? "-" : "+";
  for (Pauli p : factors) out += "IXYZ"[static_cast<int>(p)];
  return out;
}

Matrix PauliString::to_matrix() const {
  Matrix m = Matrix::Identity(1, 1) * static_cast<double>(sign);
  for (Pauli p : factors) {
    const Matrix2 f = pauli_matrix(p);
    Matrix next(m.rows() * 2, m.cols() * 2);
    for (Index i = 0; i < m.rows(); ++i)
      for (Index j = 0; j < m.cols(); ++j) next.block(i * 2, j * 2, 2, 2) = m(i, j) * f;
    m = std::move(next);
  }
  return m;
}

PauliProduct multiply(const PauliString& a, const PauliString& b) {
  if (a.size() != b.size()) throw std::invalid_argument("Pauli string length mismatch");
  // Single-qubit table: P_a * P_b = i^phase * P_c.
  PauliProduct out;
  out.string.sign = a.sign * b.sign;
  int phase = 0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const int x = static_cast<int>(a.factors[k]);
    const int y = static_cast<int>(b.factors[k]);
    out.string.factors.push_back(static_cast<Pauli>(x ^ y));
    if (x != 0 && y != 0 && x != y) {
      // XY = iZ, YZ = iX, ZX = iY; reversed order gives -i.
      const bool cyclic = (y - x + 3) % 3 == 1;
      phase += cyclic ? 1 : 3;
    }
  }
  phase %= 4;
  if (phase >= 2) {
    out.string.sign = -out.string.sign;
    phase -= 2;
  }
  out.phase = phase;
  return out;
}

bool commutes(const PauliString& a, const PauliString& b) {
  if (a.size() != b.size()) throw std::invalid_argument("Pauli string length mismatch");
  int anti = 0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a.factors[k] != Pauli::I && b.factors[k] != Pauli::I && a.factors[k] != b.factors[k]) ++anti;
  }
  return anti % 2 == 0;
}

Matrix2 pauli_matrix(Pauli p) {
  Matrix2 m;
  switch (p) {
    case Pauli::I: m << 1, 0, 0, 1; break;
    case Pauli::X: m << 0, 1, 1, 0; break;
    case Pauli::Y: m << 0, -kI, kI, 0; break;
    case Pauli::Z: m << 1, 0, 0, -1; break;
  }
  return m;
}

Matrix2 hadamard() {
  Matrix2 h;
  h << 1, 1, 1, -1;
  return h / std::sqrt(2.0);
}

Eigen::Vector2cd basis_eigenvector(Basis basis, Outcome outcome) {
  const double s = sign_of(outcome);
  const double r = 1.0 / std::sqrt(2.0);
  Eigen::Vector2cd e;
  switch (basis) {
    case Basis::Z: e = s > 0 ? Eigen::Vector2cd(1, 0) : Eigen::Vector2cd(0, 1); break;
    case Basis::X: e = Eigen::Vector2cd(r, s * r); break;
    case Basis::Y: e = Eigen::Vector2cd(r, s * r * kI); break;
  }
  return e;
}

// ---------------------------------------------------------------------------
// Gates and channels

DensityMatrix apply_single_qubit_unitary(const DensityMatrix& rho, int qubit, const Matrix2& u) {
  check_qubit(rho, qubit);
  if ((u.adjoint() * u - Matrix2::Identity()).cwiseAbs().maxCoeff() > 1e-10) {
    throw std::invalid_argument("single-qubit operator is not unitary");
  }
  const Index d = rho.dim();
  const Index m = bit_of(rho.num_qubits(), qubit);
  Matrix out = rho.matrix();
  // Rows: out <- U out.
  for (Index i0 = 0; i0 < d; ++i0) {
    if (i0 & m) continue;
    const Index i1 = i0 | m;
    for (Index j = 0; j < d; ++j) {
      const Complex a = out(i0, j), b = out(i1, j);
      out(i0, j) = u(0, 0) * a + u(0, 1) * b;
      out(i1, j) = u(1, 0) * a + u(1, 1) * b;
    }
  }
  // Columns: out <- out U^dagger.
  for (Index j0 = 0; j0 < d; ++j0) {
    if (j0 & m) continue;
    const Index j1 = j0 | m;
    for (Index i = 0; i < d; ++i) {
      const Complex a = out(i, j0), b = out(i, j1);
      out(i, j0) = a * std::conj(u(0, 0)) + b * std::conj(u(0, 1));
      out(i, j1) = a * std::conj(u(1, 0)) + b * std::conj(u(1, 1));
    }
  }
  return DensityMatrix::from_matrix(std::move(out));
}

DensityMatrix apply_cz(const DensityMatrix& rho, int q1, int q2) {
  check_pair(rho, q1, q2);
  const Index both = bit_of(rho.num_qubits(), q1) | bit_of(rho.num_qubits(), q2);
  const auto phase = [both](Index i) { return (i & both) == both ? -1.0 : 1.0; };
  Matrix out = rho.matrix();
  for (Index i = 0; i < rho.dim(); ++i)
    for (Index j = 0; j < rho.dim(); ++j) out(i, j) *= phase(i) * phase(j);
  return DensityMatrix::from_matrix(std::move(out));
}

DensityMatrix depolarize(const DensityMatrix& rho, int qubit, double alpha) {
  check_qubit(rho, qubit);
  check_probability(alpha, 1.0, "depolarization parameter");
  const Index m = bit_of(rho.num_qubits(), qubit);
  const Matrix& in = rho.matrix();
  Matrix out(rho.dim(), rho.dim());
  for (Index i = 0; i < rho.dim(); ++i) {
    for (Index j = 0; j < rho.dim(); ++j) {
      Complex mixed{0.0, 0.0};
      if ((i & m) == (j & m)) mixed = 0.5 * (in(i & ~m, j & ~m) + in(i | m, j | m));
      out(i, j) = (1.0 - alpha) * in(i, j) + alpha * mixed;
    }
  }
  return DensityMatrix::from_matrix(std::move(out));
}

DensityMatrix dephase(const DensityMatrix& rho, int qubit, double lambda) {
  check_qubit(rho, qubit);
  check_probability(lambda, 0.5, "dephasing parameter");
  const Index m = bit_of(rho.num_qubits(), qubit);
  const double coherence = 1.0 - 2.0 * lambda;
  Matrix out = rho.matrix();
  for (Index i = 0; i < rho.dim(); ++i)
    for (Index j = 0; j < rho.dim(); ++j)
      if ((i & m) != (j & m)) out(i, j) *= coherence;
  return DensityMatrix::from_matrix(std::move(out));
}

DensityMatrix noisy_cz(const DensityMatrix& rho, int q1, int q2, double failure) {
  check_pair(rho, q1, q2);
  check_probability(failure, 1.0, "gate failure probability");
  const Index m1 = bit_of(rho.num_qubits(), q1);
  const Index m2 = bit_of(rho.num_qubits(), q2);
  const Index both = m1 | m2;
  const Matrix& in = rho.matrix();
  const auto phase = [both](Index i) { return (i & both) == both ? -1.0 : 1.0; };
  const Index patterns[4] = {0, m1, m2, both};
  Matrix out(rho.dim(), rho.dim());
  for (Index i = 0; i < rho.dim(); ++i) {
    for (Index j = 0; j < rho.dim(); ++j) {
      Complex failed{0.0, 0.0};
      if ((i & both) == (j & both)) {
        for (Index p : patterns) failed += in((i & ~both) | p, (j & ~both) | p);
        failed *= 0.25;
      }
      out(i, j) = (1.0 - failure) * phase(i) * phase(j) * in(i, j) + failure * failed;
    }
  }
  return DensityMatrix::from_matrix(std::move(out));
}

// ---------------------------------------------------------------------------
// Measurement and expectation values

namespace {

Matrix project_unnormalized(const DensityMatrix& rho, int qubit, Basis basis, Outcome outcome) {
  check_qubit(rho, qubit);
  const Eigen::Vector2cd e = basis_eigenvector(basis, outcome);
  const int pos = rho.num_qubits() - 1 - qubit;
  const Index d = rho.dim() / 2;
  const Matrix& in = rho.matrix();
  Matrix out = Matrix::Zero(d, d);
  for (Index a = 0; a < d; ++a) {
    for (Index b = 0; b < d; ++b) {
      Complex acc{0.0, 0.0};
      for (Index s = 0; s < 2; ++s)
        for (Index t = 0; t < 2; ++t) acc += std::conj(e(s)) * in(insert_bit(a, pos, s), insert_bit(b, pos, t)) * e(t);
      out(a, b) = acc;
    }
  }
  return out;
}

}  // namespace

Projection measure_project(const DensityMatrix& rho, int qubit, Basis basis, Outcome outcome) {
  Matrix reduced = project_unnormalized(rho, qubit, basis, outcome);
  const double p = reduced.trace().real();
  if (p < kZeroProbability) {
    std::ostringstream msg;
    msg << "zero-probability branch: outcome " << sign_of(outcome) << " on qubit " << qubit << " has p = " << p;
    throw ZeroProbabilityBranch(msg.str());
  }
  reduced /= p;
  return {p, DensityMatrix::from_matrix(std::move(reduced))};
}

double outcome_probability(const DensityMatrix& rho, int qubit, Basis basis, Outcome outcome) {
  return project_unnormalized(rho, qubit, basis, outcome).trace().real();
}

double pauli_expectation(const DensityMatrix& rho, const PauliString& s) {
  if (static_cast<int>(s.size()) != rho.num_qubits()) throw std::invalid_argument("Pauli string length mismatch");
  // P|k> = phase(k) |k ^ flip>, so Tr(P rho) = sum_k phase(k) rho(k, k ^ flip).
  const int n = rho.num_qubits();
  Index flip = 0;
  for (int q = 0; q < n; ++q) {
    const Pauli p = s.factors[static_cast<std::size_t>(q)];
    if (p == Pauli::X || p == Pauli::Y) flip |= bit_of(n, q);
  }
  Complex acc{0.0, 0.0};
  for (Index k = 0; k < rho.dim(); ++k) {
    Complex phase{static_cast<double>(s.sign), 0.0};
    for (int q = 0; q < n; ++q) {
      const bool one = (k & bit_of(n, q)) != 0;
      switch (s.factors[static_cast<std::size_t>(q)]) {
        case Pauli::Y: phase *= one ? -kI : kI; break;
        case Pauli::Z: if (one) phase = -phase; break;
        default: break;
      }
    }
    acc += phase * rho(k, k ^ flip);
  }
  return acc.real();
}

double fidelity_pure(const DensityMatrix& rho, const PureState& psi) {
  if (rho.num_qubits() != psi.num_qubits()) throw std::invalid_argument("fidelity dimension mismatch");
  const Vector& v = psi.amplitudes();
  return (v.adjoint() * rho.matrix() * v)(0, 0).real();
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> qubits_to_remove) {
  const int n = rho.num_qubits();
  const Scatter s = make_scatter(n, qubits_to_remove);
  if (s.kept_masks.empty()) throw std::invalid_argument("cannot trace out every qubit");
  const Index kept_dim = Index{1} << s.kept_masks.size();
  const Index traced_dim = Index{1} << s.traced_masks.size();
  Matrix out = Matrix::Zero(kept_dim, kept_dim);
  for (Index a = 0; a < kept_dim; ++a)
    for (Index b = 0; b < kept_dim; ++b)
      for (Index t = 0; t < traced_dim; ++t) out(a, b) += rho(s.full(a, t), s.full(b, t));
  return DensityMatrix::from_matrix(std::move(out));
}

DensityMatrix insert_maximally_mixed(const DensityMatrix& rho, std::span<const int> positions) {
  const int n = rho.num_qubits() + static_cast<int>(positions.size());
  if (n > kMaxQubits) throw std::invalid_argument("register would exceed the qubit limit");
  const Scatter s = make_scatter(n, positions);
  const Index kept_dim = rho.dim();
  const Index mixed_dim = Index{1} << positions.size();
  const double weight = 1.0 / static_cast<double>(mixed_dim);
  const Index d = Index{1} << n;
  Matrix out = Matrix::Zero(d, d);
  for (Index a = 0; a < kept_dim; ++a)
    for (Index b = 0; b < kept_dim; ++b)
      for (Index t = 0; t < mixed_dim; ++t) out(s.full(a, t), s.full(b, t)) = weight * rho(a, b);
  return DensityMatrix::from_matrix(std::move(out));
}

}  // namespace ghzline::qdm
