// Exact state-vector quantum mechanics for one and two qubits: the trapped-ion
// gate set (collective rotations, Moelmer-Soerensen entangler, addressed z
// rotations, Hadamard/conditional-phase), Born-rule probabilities, fidelity and
// quantum trace distance, plus a depolarizing channel on density operators.
//
// Basis convention, fixed throughout the project:
//   * |1> is the S_1/2 ground qubit level, |0> the D_5/2 level.
//   * Single-qubit amplitude order: index 0 <-> |1>, index 1 <-> |0>.
//   * Qubit 1 is the left tensor factor; two-qubit order |11>,|10>,|01>,|00>.
//   * sigma_z|0> = +|0>, sigma_z|1> = -|1>, sigma_y|1> = -i|0>; the matrices
//     below are these standard operators written in the index order above.

#pragma once

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

namespace psiepi {

inline constexpr double kPi = std::numbers::pi;

template <typename Scalar>
inline constexpr Scalar kUnitTolerance = Scalar(1e-12);
template <>
inline constexpr float kUnitTolerance<float> = 1e-5f;

template <typename Scalar>
using Complex = std::complex<Scalar>;

// Dimensions are always 2 or 4; fixed-capacity dynamic types avoid the heap.
template <typename Scalar>
using StateVector =
    Eigen::Matrix<Complex<Scalar>, Eigen::Dynamic, 1, Eigen::ColMajor, 4, 1>;
template <typename Scalar>
using GateMatrix = Eigen::Matrix<Complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic,
                                 Eigen::ColMajor, 4, 4>;
template <typename Scalar>
using Matrix2 = Eigen::Matrix<Complex<Scalar>, 2, 2>;
template <typename Scalar>
using ProbabilityVector =
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1, Eigen::ColMajor, 4, 1>;

template <typename Scalar = double>
Matrix2<Scalar> sigma_x() {
  Matrix2<Scalar> m;
  m << Complex<Scalar>(0), Complex<Scalar>(1), Complex<Scalar>(1),
      Complex<Scalar>(0);
  return m;
}

template <typename Scalar = double>
Matrix2<Scalar> sigma_y() {
  Matrix2<Scalar> m;
  m << Complex<Scalar>(0), Complex<Scalar>(0, 1), Complex<Scalar>(0, -1),
      Complex<Scalar>(0);
  return m;
}

template <typename Scalar = double>
Matrix2<Scalar> sigma_z() {
  Matrix2<Scalar> m;
  m << Complex<Scalar>(-1), Complex<Scalar>(0), Complex<Scalar>(0),
      Complex<Scalar>(1);
  return m;
}

/// Axis operator of the collective rotation: sin(phi) sigma_y - cos(phi) sigma_x.
template <typename Scalar = double>
Matrix2<Scalar> rotation_axis_operator(Scalar phi) {
  return std::sin(phi) * sigma_y<Scalar>() - std::cos(phi) * sigma_x<Scalar>();
}

template <typename Scalar>
GateMatrix<Scalar> kronecker(const GateMatrix<Scalar>& a,
                             const GateMatrix<Scalar>& b) {
  return Eigen::kroneckerProduct(a, b);
}

/// Computational-basis label in the fixed ordering; e.g. index 0 of a
/// two-qubit register is "11", index 3 is "00".
inline std::string basis_label(Eigen::Index index, int n_qubits) {
  std::string out;
  for (int q = n_qubits - 1; q >= 0; --q) {
    out.push_back(((index >> q) & 1) ? '0' : '1');
  }
  return out;
}

template <typename Scalar = double>
class PureStateT {
 public:
  using Vector = StateVector<Scalar>;

  explicit PureStateT(Vector amplitudes) : amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() != 2 && amplitudes_.size() != 4) {
      throw std::invalid_argument("PureState: dimension must be 2 or 4");
    }
    if (std::abs(amplitudes_.squaredNorm() - Scalar(1)) >
        kUnitTolerance<Scalar>) {
      throw std::invalid_argument("PureState: amplitudes are not normalized");
    }
  }

  static PureStateT basis_state(Eigen::Index dim, Eigen::Index index) {
    if (index < 0 || index >= dim) {
      throw std::out_of_range("PureState: basis index out of range");
    }
    Vector v = Vector::Zero(dim);
    v(index) = Complex<Scalar>(1);
    return PureStateT(std::move(v));
  }

  /// Single-qubit state from the coefficients of |1> and |0> (in that order).
  static PureStateT single_qubit(Complex<Scalar> amp1, Complex<Scalar> amp0) {
    Vector v(2);
    v << amp1, amp0;
    return PureStateT(std::move(v));
  }

  Eigen::Index dim() const { return amplitudes_.size(); }
  int num_qubits() const { return dim() == 2 ? 1 : 2; }
  const Vector& amplitudes() const { return amplitudes_; }

  /// <this|other>
  Complex<Scalar> overlap(const PureStateT& other) const {
    if (dim() != other.dim()) {
      throw std::invalid_argument("PureState: dimension mismatch");
    }
    return amplitudes_.dot(other.amplitudes_);
  }

  PureStateT tensor(const PureStateT& other) const {
    if (dim() != 2 || other.dim() != 2) {
      throw std::invalid_argument(
          "PureState: tensor product is defined for two single-qubit states");
    }
    Vector v(4);
    v << amplitudes_(0) * other.amplitudes_(0),
        amplitudes_(0) * other.amplitudes_(1),
        amplitudes_(1) * other.amplitudes_(0),
        amplitudes_(1) * other.amplitudes_(1);
    return PureStateT(std::move(v));
  }

 private:
  Vector amplitudes_;
};

using PureState = PureStateT<double>;

template <typename Scalar = double>
class UnitaryT {
 public:
  using Matrix = GateMatrix<Scalar>;

  UnitaryT(Matrix matrix, std::string label)
      : matrix_(std::move(matrix)), label_(std::move(label)) {
    const Eigen::Index d = matrix_.rows();
    if ((d != 2 && d != 4) || matrix_.cols() != d) {
      throw std::invalid_argument("Unitary: matrix must be 2x2 or 4x4");
    }
    const Matrix residual =
        matrix_.adjoint() * matrix_ - Matrix::Identity(d, d);
    if (residual.cwiseAbs().maxCoeff() > kUnitTolerance<Scalar>) {
      throw std::invalid_argument("Unitary: U^dag U != I for \"" + label_ +
                                  "\"");
    }
  }

  const Matrix& matrix() const { return matrix_; }
  const std::string& label() const { return label_; }
  Eigen::Index dim() const { return matrix_.rows(); }

  UnitaryT adjoint() const { return UnitaryT(matrix_.adjoint(), label_ + "^dag"); }

  PureStateT<Scalar> apply(const PureStateT<Scalar>& psi) const {
    if (psi.dim() != dim()) {
      throw std::invalid_argument("Unitary: state dimension mismatch");
    }
    return PureStateT<Scalar>(matrix_ * psi.amplitudes());
  }

  PureStateT<Scalar> operator*(const PureStateT<Scalar>& psi) const {
    return apply(psi);
  }

  friend UnitaryT operator*(const UnitaryT& a, const UnitaryT& b) {
    if (a.dim() != b.dim()) {
      throw std::invalid_argument("Unitary: composition dimension mismatch");
    }
    return UnitaryT(a.matrix_ * b.matrix_, a.label_ + "*" + b.label_);
  }

 private:
  Matrix matrix_;
  std::string label_;
};

using Unitary = UnitaryT<double>;

// Density operators exist to host the depolarizing noise knob; the protocol
// itself is pure-state.
template <typename Scalar = double>
class DensityOperatorT {
 public:
  using Matrix = GateMatrix<Scalar>;

  explicit DensityOperatorT(Matrix rho) : rho_(std::move(rho)) {
    const Eigen::Index d = rho_.rows();
    if ((d != 2 && d != 4) || rho_.cols() != d) {
      throw std::invalid_argument("DensityOperator: matrix must be 2x2 or 4x4");
    }
    if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() >
        kUnitTolerance<Scalar>) {
      throw std::invalid_argument("DensityOperator: not Hermitian");
    }
    if (std::abs(rho_.trace().real() - Scalar(1)) > kUnitTolerance<Scalar> ||
        std::abs(rho_.trace().imag()) > kUnitTolerance<Scalar>) {
      throw std::invalid_argument("DensityOperator: trace != 1");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(rho_,
                                                 Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < -kUnitTolerance<Scalar>) {
      throw std::invalid_argument("DensityOperator: negative eigenvalue");
    }
  }

  static DensityOperatorT from_pure(const PureStateT<Scalar>& psi) {
    return DensityOperatorT(psi.amplitudes() * psi.amplitudes().adjoint());
  }

  static DensityOperatorT maximally_mixed(Eigen::Index dim) {
    return DensityOperatorT(Matrix::Identity(dim, dim) / Scalar(dim));
  }

  const Matrix& matrix() const { return rho_; }
  Eigen::Index dim() const { return rho_.rows(); }

  Scalar purity() const { return (rho_ * rho_).trace().real(); }

 private:
  Matrix rho_;
};

using DensityOperator = DensityOperatorT<double>;

namespace detail {

inline std::string angle_label(const char* name, double theta, double phi) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "%s(theta=%.6g,phi=%.6g)", name, theta, phi);
  return buf;
}

inline std::string angle_label(const char* name, double theta) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "%s(%.6g)", name, theta);
  return buf;
}

/// exp(-i(theta/2) A) for an axis operator with A^2 = I.
template <typename Scalar>
Matrix2<Scalar> half_angle_exponential(Scalar theta, const Matrix2<Scalar>& axis) {
  return std::cos(theta / 2) * Matrix2<Scalar>::Identity() -
         Complex<Scalar>(0, 1) * std::sin(theta / 2) * axis;
}

/// Embed a single-qubit operator on the given qubit of an n-qubit register.
template <typename Scalar>
GateMatrix<Scalar> embed(const Matrix2<Scalar>& op, int qubit_index,
                         int n_qubits) {
  if (n_qubits != 1 && n_qubits != 2) {
    throw std::invalid_argument("embed: register size must be 1 or 2");
  }
  if (qubit_index < 1 || qubit_index > n_qubits) {
    throw std::out_of_range("embed: qubit index out of range");
  }
  if (n_qubits == 1) return op;
  const GateMatrix<Scalar> id2 = Matrix2<Scalar>::Identity();
  const GateMatrix<Scalar> g = op;
  return qubit_index == 1 ? kronecker<Scalar>(g, id2)
                          : kronecker<Scalar>(id2, g);
}

}  // namespace detail

/// Collective rotation U(theta, phi) = exp(-i(theta/2) sum_i [sin(phi) sigma_y^i
/// - cos(phi) sigma_x^i]); for n = 2 it acts identically on both qubits.
template <typename Scalar = double>
UnitaryT<Scalar> collective_rotation(Scalar theta, Scalar phi, int n_qubits) {
  if (n_qubits != 1 && n_qubits != 2) {
    throw std::invalid_argument("collective_rotation: n_qubits must be 1 or 2");
  }
  const Matrix2<Scalar> u =
      detail::half_angle_exponential(theta, rotation_axis_operator(phi));
  GateMatrix<Scalar> m;
  if (n_qubits == 1) {
    m = u;
  } else {
    m = kronecker<Scalar>(u, u);
  }
  return UnitaryT<Scalar>(std::move(m), detail::angle_label("U", theta, phi));
}

/// Moelmer-Soerensen gate MS(theta, phi) = exp(-i(theta/4) G^2) with the
/// collective generator G = sum_i [cos(phi) sigma_y^i + sin(phi) sigma_x^i].
/// The entangling axis at phi = 0 is y: this phase origin (a quarter turn from
/// the collective rotation's) is the one under which MS(pi/2,0) * U(pi/2,pi)
/// reproduces the H/CZ measurement distributions exactly, which is how the
/// ambiguity left by the gate definitions is resolved here.
template <typename Scalar = double>
UnitaryT<Scalar> ms_gate(Scalar theta, Scalar phi) {
  const Matrix2<Scalar> axis =
      std::cos(phi) * sigma_y<Scalar>() + std::sin(phi) * sigma_x<Scalar>();
  // G^2 = 2 I + 2 axis (x) axis, so MS = e^{-i theta/2} exp(-i(theta/2) axis (x) axis).
  const GateMatrix<Scalar> axis2 =
      kronecker<Scalar>(GateMatrix<Scalar>(axis), GateMatrix<Scalar>(axis));
  const GateMatrix<Scalar> m =
      std::exp(Complex<Scalar>(0, -theta / 2)) *
      (std::cos(theta / 2) * GateMatrix<Scalar>(GateMatrix<Scalar>::Identity(4, 4)) -
       Complex<Scalar>(0, 1) * std::sin(theta / 2) * axis2);
  return UnitaryT<Scalar>(m, detail::angle_label("MS", theta, phi));
}

/// Uz^{(i)}(theta) = exp(-i(theta/2) sigma_z^{(i)}): phase rotation on the
/// addressed qubit, identity on the other.
template <typename Scalar = double>
UnitaryT<Scalar> z_rotation(int qubit_index, Scalar theta, int n_qubits = 2) {
  Matrix2<Scalar> uz = Matrix2<Scalar>::Zero();
  uz(0, 0) = std::exp(Complex<Scalar>(0, theta / 2));   // acts on |1>
  uz(1, 1) = std::exp(Complex<Scalar>(0, -theta / 2));  // acts on |0>
  char name[16];
  std::snprintf(name, sizeof(name), "Uz_%d", qubit_index);
  return UnitaryT<Scalar>(detail::embed(uz, qubit_index, n_qubits),
                          detail::angle_label(name, theta));
}

template <typename Scalar = double>
UnitaryT<Scalar> hadamard(int qubit_index, int n_qubits = 2) {
  Matrix2<Scalar> h;
  const Scalar s = Scalar(1) / std::sqrt(Scalar(2));
  // (sigma_x + sigma_z)/sqrt(2) in the |1>,|0> index order.
  h << Complex<Scalar>(-s), Complex<Scalar>(s), Complex<Scalar>(s),
      Complex<Scalar>(s);
  char name[16];
  std::snprintf(name, sizeof(name), "H_%d", qubit_index);
  return UnitaryT<Scalar>(detail::embed(h, qubit_index, n_qubits), name);
}

/// R_alpha: multiplies only the |11> amplitude by e^{i alpha}.
template <typename Scalar = double>
UnitaryT<Scalar> controlled_phase(Scalar alpha) {
  GateMatrix<Scalar> m = GateMatrix<Scalar>::Identity(4, 4);
  m(0, 0) = std::exp(Complex<Scalar>(0, alpha));
  return UnitaryT<Scalar>(std::move(m), detail::angle_label("R", alpha));
}

/// Z_beta = |0><0| + e^{i beta}|1><1| (single qubit).
template <typename Scalar = double>
UnitaryT<Scalar> diag_z_beta(Scalar beta) {
  GateMatrix<Scalar> m = GateMatrix<Scalar>::Identity(2, 2);
  m(0, 0) = std::exp(Complex<Scalar>(0, beta));
  return UnitaryT<Scalar>(std::move(m), detail::angle_label("Z", beta));
}

template <typename Scalar>
ProbabilityVector<Scalar> born_probabilities(const PureStateT<Scalar>& psi) {
  return psi.amplitudes().cwiseAbs2();
}

template <typename Scalar>
ProbabilityVector<Scalar> born_probabilities(
    const DensityOperatorT<Scalar>& rho) {
  return rho.matrix().diagonal().real();
}

/// sqrt(1 - |<psi0|psi1>|^2) for any two unit column vectors of equal dimension.
template <typename Derived0, typename Derived1>
typename Derived0::RealScalar quantum_trace_distance(
    const Eigen::MatrixBase<Derived0>& psi0,
    const Eigen::MatrixBase<Derived1>& psi1) {
  using Real = typename Derived0::RealScalar;
  if (psi0.size() != psi1.size()) {
    throw std::invalid_argument("quantum_trace_distance: dimension mismatch");
  }
  const Real overlap_sq = std::norm(psi0.dot(psi1));
  return std::sqrt(std::max(Real(0), Real(1) - overlap_sq));
}

template <typename Scalar>
Scalar quantum_trace_distance(const PureStateT<Scalar>& psi0,
                              const PureStateT<Scalar>& psi1) {
  return quantum_trace_distance(psi0.amplitudes(), psi1.amplitudes());
}

/// (1-p) rho + p * maximally mixed.
template <typename Scalar>
DensityOperatorT<Scalar> depolarize(const DensityOperatorT<Scalar>& rho,
                                    Scalar p) {
  if (!(p >= Scalar(0) && p <= Scalar(1))) {
    throw std::invalid_argument("depolarize: p must lie in [0, 1]");
  }
  const Eigen::Index d = rho.dim();
  GateMatrix<Scalar> m =
      (Scalar(1) - p) * rho.matrix() +
      (p / Scalar(d)) * GateMatrix<Scalar>(GateMatrix<Scalar>::Identity(d, d));
  return DensityOperatorT<Scalar>(std::move(m));
}

template <typename Scalar>
DensityOperatorT<Scalar> evolve(const DensityOperatorT<Scalar>& rho,
                                const UnitaryT<Scalar>& u) {
  if (rho.dim() != u.dim()) {
    throw std::invalid_argument("evolve: dimension mismatch");
  }
  return DensityOperatorT<Scalar>(u.matrix() * rho.matrix() *
                                  u.matrix().adjoint());
}

/// Reduced single-qubit state of a two-qubit pure state.
template <typename Scalar>
DensityOperatorT<Scalar> partial_trace(const PureStateT<Scalar>& psi,
                                       int keep_qubit) {
  if (psi.dim() != 4) {
    throw std::invalid_argument("partial_trace: state must be two-qubit");
  }
  if (keep_qubit != 1 && keep_qubit != 2) {
    throw std::out_of_range("partial_trace: qubit index out of range");
  }
  const auto& a = psi.amplitudes();
  Matrix2<Scalar> rho = Matrix2<Scalar>::Zero();
  for (Eigen::Index i = 0; i < 2; ++i) {
    for (Eigen::Index j = 0; j < 2; ++j) {
      for (Eigen::Index k = 0; k < 2; ++k) {
        if (keep_qubit == 1) {
          rho(i, j) += a(2 * i + k) * std::conj(a(2 * j + k));
        } else {
          rho(i, j) += a(2 * k + i) * std::conj(a(2 * k + j));
        }
      }
    }
  }
  return DensityOperatorT<Scalar>(GateMatrix<Scalar>(rho));
}

/// Bloch vector (<sigma_x>, <sigma_y>, <sigma_z>) of a single-qubit pure state.
template <typename Scalar>
Eigen::Matrix<Scalar, 3, 1> bloch_vector(const PureStateT<Scalar>& psi) {
  if (psi.dim() != 2) {
    throw std::invalid_argument("bloch_vector: state must be single-qubit");
  }
  const Complex<Scalar> a1 = psi.amplitudes()(0);
  const Complex<Scalar> a0 = psi.amplitudes()(1);
  const Complex<Scalar> cross = std::conj(a1) * a0;
  return {Scalar(2) * cross.real(), Scalar(-2) * cross.imag(),
          std::norm(a0) - std::norm(a1)};
}

}  // namespace psiepi
