#include "starnet/qcore.hpp"

#include <cmath>

#include "starnet/errors.hpp"

namespace starnet::qcore {

namespace {
constexpr Complex kI{0.0, 1.0};

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }
}  // namespace

Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Matrix pauli_y() {
  Matrix m(2, 2);
  m << 0, -kI, kI, 0;
  return m;
}

Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

Matrix identity(int dim) { return Matrix::Identity(dim, dim); }

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

bool is_hermitian(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return max_abs(m - m.adjoint()) <= tol;
}

bool is_involution(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return max_abs(m * m - identity(static_cast<int>(m.rows()))) <= tol;
}

Observable make_observable(Matrix matrix, int party, int setting) {
  if (matrix.rows() != matrix.cols()) throw DimensionError("observable matrix must be square");
  if (!matrix.allFinite()) throw NumericError("observable matrix has non-finite entries");
  if (!is_hermitian(matrix)) throw NumericError("observable is not Hermitian within 1e-12");
  if (!is_involution(matrix)) throw NumericError("observable does not square to identity within 1e-10");
  return Observable{std::move(matrix), party, setting};
}

LinkState make_link_state(Matrix matrix, int dim_a, int dim_b, int copies,
                          double visibility_per_copy) {
  if (dim_a < 1 || dim_b < 1 || matrix.rows() != matrix.cols() ||
      matrix.rows() != static_cast<Eigen::Index>(dim_a) * dim_b)
    throw DimensionError("link state matrix must be (dim_a*dim_b) square");
  if (!matrix.allFinite()) throw NumericError("link state has non-finite entries");
  if (std::abs(matrix.trace() - Complex{1.0, 0.0}) > kTraceTol)
    throw NumericError("link state trace differs from 1 beyond 1e-12");
  if (!is_hermitian(matrix)) throw NumericError("link state is not Hermitian within 1e-12");
  // The eigenvalue floor needs a full decomposition; above dimension 1024
  // (five-plus copies) trace and Hermiticity are the only affordable checks.
  if (matrix.rows() <= 1024) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(matrix, Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < kPsdFloor)
      throw NumericError("link state has an eigenvalue below the -1e-10 floor");
  }
  return LinkState{std::move(matrix), copies, visibility_per_copy, dim_a, dim_b};
}

namespace {
void check_copies(int c) {
  if (c < 1) throw InvalidScenarioError("copies per link must be >= 1");
  if (c > 6) throw CapacityError("link dimension 4^c; c > 6 refused");
}
}  // namespace

LinkState bell_copies(int c) {
  check_copies(c);
  const int d = 1 << c;
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(d) * d);
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  for (int s = 0; s < d; ++s) psi(static_cast<Eigen::Index>(s) * d + s) = amp;
  return make_link_state(psi * psi.adjoint(), d, d, c, 1.0);
}

LinkState werner_copies(int c, double v) {
  check_copies(c);
  if (v < 0.0 || v > 1.0) throw DomainError("visibility must lie in [0, 1]");

  const Matrix one_copy = v * bell_copies(1).matrix + (1.0 - v) * 0.25 * identity(4);
  Matrix interleaved = one_copy;
  for (int j = 1; j < c; ++j) interleaved = kron(interleaved, one_copy);

  // Built in (A1 B1 A2 B2 ...) order; regroup to (A1..Ac B1..Bc).
  std::vector<int> new_from_old(static_cast<std::size_t>(2 * c));
  for (int q = 0; q < c; ++q) {
    new_from_old[static_cast<std::size_t>(q)] = 2 * q;
    new_from_old[static_cast<std::size_t>(c + q)] = 2 * q + 1;
  }
  return make_link_state(permute_qubits(interleaved, new_from_old), 1 << c, 1 << c, c, v);
}

Observable transpose_on_bob(const Observable& obs) {
  return make_observable(obs.matrix.transpose(), obs.party, obs.setting);
}

std::vector<Observable> anticommuting_set(int m) {
  if (m < 2) throw InvalidScenarioError("anticommuting set requires m >= 2");
  const int l = m / 2;
  if (l > 6) throw CapacityError("local dimension 2^{floor(m/2)}; m > 13 refused");

  const Matrix x = pauli_x();
  const Matrix y = pauli_y();
  const Matrix z = pauli_z();

  auto chain = [&](int position, const Matrix& head) {
    Matrix op = Matrix::Ones(1, 1);
    for (int q = 0; q < l; ++q) {
      if (q < position) op = kron(op, z);
      else if (q == position) op = kron(op, head);
      else op = kron(op, identity(2));
    }
    return op;
  };

  std::vector<Observable> set;
  set.reserve(static_cast<std::size_t>(m));
  for (int j = 0; j < l; ++j) {
    set.push_back(make_observable(chain(j, x), 0, 2 * j + 1));
    set.push_back(make_observable(chain(j, y), 0, 2 * j + 2));
  }
  if (m % 2 == 1) set.push_back(make_observable(chain(l, z), 0, m));
  return set;
}

namespace {
void check_bipartite(const Matrix& rho, int dim_a, int dim_b) {
  if (dim_a < 1 || dim_b < 1 || rho.rows() != rho.cols() ||
      rho.rows() != static_cast<Eigen::Index>(dim_a) * dim_b)
    throw DimensionError("bipartite operator dimensions inconsistent");
}
}  // namespace

Matrix partial_trace_bob(const Matrix& rho, int dim_a, int dim_b) {
  check_bipartite(rho, dim_a, dim_b);
  Matrix out = Matrix::Zero(dim_a, dim_a);
  for (int a = 0; a < dim_a; ++a)
    for (int a2 = 0; a2 < dim_a; ++a2)
      for (int b = 0; b < dim_b; ++b)
        out(a, a2) += rho(static_cast<Eigen::Index>(a) * dim_b + b,
                          static_cast<Eigen::Index>(a2) * dim_b + b);
  return out;
}

Matrix partial_trace_alice(const Matrix& rho, int dim_a, int dim_b) {
  check_bipartite(rho, dim_a, dim_b);
  Matrix out = Matrix::Zero(dim_b, dim_b);
  for (int b = 0; b < dim_b; ++b)
    for (int b2 = 0; b2 < dim_b; ++b2)
      for (int a = 0; a < dim_a; ++a)
        out(b, b2) += rho(static_cast<Eigen::Index>(a) * dim_b + b,
                          static_cast<Eigen::Index>(a) * dim_b + b2);
  return out;
}

Matrix alice_field(const Matrix& rho, const Matrix& bob_op, int dim_a, int dim_b) {
  check_bipartite(rho, dim_a, dim_b);
  if (bob_op.rows() != dim_b || bob_op.cols() != dim_b)
    throw DimensionError("bob operator dimension mismatch");
  // field(a, a') = sum_{b, b'} rho[(a b), (a' b')] f(b', b)
  Matrix out = Matrix::Zero(dim_a, dim_a);
  for (int a = 0; a < dim_a; ++a)
    for (int a2 = 0; a2 < dim_a; ++a2) {
      Complex acc = 0.0;
      for (int b = 0; b < dim_b; ++b)
        for (int b2 = 0; b2 < dim_b; ++b2)
          acc += rho(static_cast<Eigen::Index>(a) * dim_b + b,
                     static_cast<Eigen::Index>(a2) * dim_b + b2) *
                 bob_op(b2, b);
      out(a, a2) = acc;
    }
  return out;
}

Matrix bob_field(const Matrix& rho, const Matrix& alice_op, int dim_a, int dim_b) {
  check_bipartite(rho, dim_a, dim_b);
  if (alice_op.rows() != dim_a || alice_op.cols() != dim_a)
    throw DimensionError("alice operator dimension mismatch");
  Matrix out = Matrix::Zero(dim_b, dim_b);
  for (int b = 0; b < dim_b; ++b)
    for (int b2 = 0; b2 < dim_b; ++b2) {
      Complex acc = 0.0;
      for (int a = 0; a < dim_a; ++a)
        for (int a2 = 0; a2 < dim_a; ++a2)
          acc += rho(static_cast<Eigen::Index>(a) * dim_b + b,
                     static_cast<Eigen::Index>(a2) * dim_b + b2) *
                 alice_op(a2, a);
      out(b, b2) = acc;
    }
  return out;
}

Matrix permute_qubits(const Matrix& m, const std::vector<int>& new_from_old) {
  const int qubits = static_cast<int>(new_from_old.size());
  const Eigen::Index dim = Eigen::Index{1} << qubits;
  if (m.rows() != dim || m.cols() != dim)
    throw DimensionError("operator dimension does not match qubit count");

  std::vector<Eigen::Index> perm(static_cast<std::size_t>(dim));
  for (Eigen::Index old_index = 0; old_index < dim; ++old_index) {
    Eigen::Index new_index = 0;
    for (int q = 0; q < qubits; ++q) {
      const int old_pos = new_from_old[static_cast<std::size_t>(q)];
      const Eigen::Index bit = (old_index >> (qubits - 1 - old_pos)) & 1;
      new_index |= bit << (qubits - 1 - q);
    }
    perm[static_cast<std::size_t>(old_index)] = new_index;
  }

  Matrix out(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r)
    for (Eigen::Index c = 0; c < dim; ++c)
      out(perm[static_cast<std::size_t>(r)], perm[static_cast<std::size_t>(c)]) = m(r, c);
  return out;
}

Matrix sign_involution(const Matrix& hermitian, int* zero_eigenvalues) {
  if (!is_hermitian(hermitian, 1e-9))
    throw NumericError("sign projection requires a Hermitian input");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian);
  Eigen::VectorXd signs = solver.eigenvalues();
  int zeros = 0;
  for (Eigen::Index j = 0; j < signs.size(); ++j) {
    if (std::abs(signs(j)) < 1e-12) {
      signs(j) = 1.0;  // deterministic tie-break for degenerate zeros
      ++zeros;
    } else {
      signs(j) = signs(j) > 0 ? 1.0 : -1.0;
    }
  }
  if (zero_eigenvalues != nullptr) *zero_eigenvalues += zeros;
  return solver.eigenvectors() * signs.asDiagonal() * solver.eigenvectors().adjoint();
}

Matrix random_unitary(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix g(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) g(r, c) = Complex{gauss(rng), gauss(rng)};
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int c = 0; c < dim; ++c) {
    const Complex d = r(c, c);
    const double mag = std::abs(d);
    q.col(c) *= mag == 0.0 ? Complex{1.0, 0.0} : d / mag;
  }
  return q;
}

Matrix random_involution(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix g(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) g(r, c) = Complex{gauss(rng), gauss(rng)};
  const Matrix h = 0.5 * (g + g.adjoint());
  return sign_involution(h);
}

}  // namespace starnet::qcore
