#pragma once

#include <Eigen/Dense>
#include <complex>
#include <random>
#include <vector>

namespace starnet::qcore {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kInvolutionTol = 1e-10;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kPsdFloor = -1e-10;
inline constexpr double kImagTol = 1e-10;

Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();
Matrix identity(int dim);
Matrix kron(const Matrix& a, const Matrix& b);

bool is_hermitian(const Matrix& m, double tol = kHermitianTol);
bool is_involution(const Matrix& m, double tol = kInvolutionTol);

// Hermitian involution with party/setting labels. Party 0 is the hub.
struct Observable {
  Matrix matrix;
  int party = 0;
  int setting = 0;

  int dim() const { return static_cast<int>(matrix.rows()); }
  Observable with_label(int new_party, int new_setting) const {
    return Observable{matrix, new_party, new_setting};
  }
};

// Validates squareness, Hermiticity (1e-12) and involution (1e-10).
Observable make_observable(Matrix matrix, int party, int setting);

// Density operator a source distributes, on dim_a (x) dim_b with all of
// Alice's qubits before all of Bob's.
struct LinkState {
  Matrix matrix;
  int copies = 0;                  // 0 when built from an explicit matrix
  double visibility_per_copy = 1.0;
  int dim_a = 0;
  int dim_b = 0;
};

// Validates trace 1 (1e-12), Hermiticity, eigenvalue floor -1e-10.
LinkState make_link_state(Matrix matrix, int dim_a, int dim_b, int copies = 0,
                          double visibility_per_copy = 1.0);

// |phi+><phi+|^(x)c as a density matrix in blocked qubit order; equals the
// rank-1 projector onto sum_s |s>|s> / sqrt(2^c).
LinkState bell_copies(int c);

// Product of c identical single-copy states v|phi+><phi+| + (1-v) I/4,
// same qubit order as bell_copies.
LinkState werner_copies(int c, double v);

// Entrywise transpose in the computational basis; implements moving an
// edge operator across |phi+> via (A (x) I)|phi+> = (I (x) A^T)|phi+>.
Observable transpose_on_bob(const Observable& obs);

// m pairwise-anticommuting Hermitian involutions on dimension 2^{floor(m/2)}:
// Z^{(j-1)} X I..., Z^{(j-1)} Y I... for j = 1..floor(m/2), plus Z^{(l)}
// when m is odd.
std::vector<Observable> anticommuting_set(int m);

Matrix partial_trace_bob(const Matrix& rho, int dim_a, int dim_b);
Matrix partial_trace_alice(const Matrix& rho, int dim_a, int dim_b);

// tr_B[rho (I (x) f)]; contracting with an Alice operator gives the full
// bipartite expectation: tr[rho (a (x) f)] = tr[a * alice_field(rho, f)].
Matrix alice_field(const Matrix& rho, const Matrix& bob_op, int dim_a, int dim_b);
Matrix bob_field(const Matrix& rho, const Matrix& alice_op, int dim_a, int dim_b);

// Reorders tensor factors of a multi-qubit operator. new_from_old[q] is the
// old position of the factor that lands at new position q (position 0 is
// the leftmost Kronecker factor).
Matrix permute_qubits(const Matrix& m, const std::vector<int>& new_from_old);

// Closest Hermitian involution in operator norm: eigenvalue sign map.
// Eigenvalues within 1e-12 of zero map to +1; their count is added to
// *zero_eigenvalues when provided.
Matrix sign_involution(const Matrix& hermitian, int* zero_eigenvalues = nullptr);

// Haar-distributed via Ginibre QR with phase-fixed R diagonal.
Matrix random_unitary(int dim, std::mt19937_64& rng);

// sign_involution of a GUE sample; generic Hermitian involution.
Matrix random_involution(int dim, std::mt19937_64& rng);

}  // namespace starnet::qcore
