// Copyright 2026 The ifm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ifm/errors.hpp"

/// Exact linear algebra for one and two two-level systems.
///
/// Index convention used everywhere (including on-disk operators): the joint
/// amplitude for probe basis index i and object basis index j lives at
/// position 2*i + j, with {x = 0, y = 1}.
namespace ifm {

using Complex = std::complex<double>;
using Vec2 = Eigen::Vector2cd;
using Vec4 = Eigen::Matrix<Complex, 4, 1>;
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;

/// Tolerance for state and density invariants.
inline constexpr double kStateTol = 1e-9;
/// Tolerance for exact algebraic identities.
inline constexpr double kExactTol = 1e-12;

enum class Role { probe, object };

class JointDensity;
class Ensemble;

/// Normalized pure state of a single two-level system, stored with a
/// canonical global phase: the first amplitude with magnitude > 1e-12 is
/// real and non-negative. Two states describing the same ray compare equal
/// amplitude-by-amplitude.
class QubitState {
  public:
    static QubitState x();
    static QubitState y();
    static QubitState sigma_plus();
    static QubitState sigma_minus();
    static QubitState diag_plus();
    static QubitState diag_minus();

    /// Normalizes and canonicalizes. Throws ZeroVector for norm <= 1e-12.
    static QubitState from_amplitudes(Complex ax, Complex ay);
    static QubitState from_vector(const Vec2 &v);

    const Vec2 &amplitudes() const { return amps_; }
    Complex operator[](int i) const { return amps_[i]; }

    /// The orthogonal complement, unique up to phase.
    QubitState orthogonal() const;
    QubitState transformed(const Mat2 &unitary) const;

    bool approx_equal(const QubitState &other, double tol = kStateTol) const;
    std::string str() const;

  private:
    explicit QubitState(Vec2 v) : amps_(std::move(v)) {}
    Vec2 amps_;
};

QubitState make_state(Complex ax, Complex ay);

/// |<a|b>|^2.
double overlap_probability(const QubitState &a, const QubitState &b);

struct BlochVector {
    double n1 = 0;
    double n2 = 0;
    double n3 = 1;

    double dot(const BlochVector &o) const { return n1 * o.n1 + n2 * o.n2 + n3 * o.n3; }
    double norm() const;
};

/// |x> maps to the north pole (0,0,1), |d+> to (1,0,0), |sigma+> to (0,1,0).
BlochVector to_bloch(const QubitState &s);
QubitState from_bloch(const BlochVector &v);
QubitState from_bloch_angles(double theta, double phi);

enum class BasisLabel { xy, sigma, diag, custom };

class Basis {
  public:
    static Basis xy();
    static Basis sigma();
    static Basis diag();
    /// Throws InvalidBasis unless <b1|b2> = 0 within 1e-9.
    static Basis from_states(const QubitState &b1, const QubitState &b2);
    /// The basis {b1, b1-complement}; returns a named basis when b1 is one of
    /// the named first vectors.
    static Basis completing(const QubitState &b1);

    const QubitState &b1() const { return b1_; }
    const QubitState &b2() const { return b2_; }
    const QubitState &operator[](int k) const { return k == 0 ? b1_ : b2_; }
    BasisLabel label() const { return label_; }
    std::string name() const;

  private:
    Basis(QubitState b1, QubitState b2, BasisLabel label)
        : b1_(std::move(b1)), b2_(std::move(b2)), label_(label) {}
    QubitState b1_;
    QubitState b2_;
    BasisLabel label_;
};

/// Coordinates (<b1|s>, <b2|s>).
std::array<Complex, 2> change_basis(const QubitState &s, const Basis &target);
QubitState reassemble(const std::array<Complex, 2> &coords, const Basis &basis);

/// 2x2 density operator; Hermitian, trace one, PSD.
class QubitDensity {
  public:
    static QubitDensity pure(const QubitState &s);
    static QubitDensity maximally_mixed();
    /// Validates invariants; throws InvalidDensity.
    static QubitDensity from_matrix(const Mat2 &m);

    const Mat2 &matrix() const { return m_; }
    Complex operator()(int r, int c) const { return m_(r, c); }
    double purity() const;

  private:
    friend class JointDensity;
    friend QubitDensity partial_trace(const JointDensity &, Role);
    friend QubitDensity density_of_ensemble(const Ensemble &);
    explicit QubitDensity(Mat2 m) : m_(std::move(m)) {}
    Mat2 m_;
};

class JointPureState {
  public:
    /// (|x>|y> - |y>|x>)/sqrt2, canonicalized.
    static JointPureState singlet();
    static JointPureState from_vector(const Vec4 &v);

    const Vec4 &amplitudes() const { return amps_; }
    Complex operator[](int i) const { return amps_[i]; }

  private:
    explicit JointPureState(Vec4 v) : amps_(std::move(v)) {}
    Vec4 amps_;
};

JointPureState tensor_product(const QubitState &probe, const QubitState &object);

/// 4x4 density operator of the probe-object pair; Hermitian, trace one, PSD.
class JointDensity {
  public:
    static JointDensity pure(const JointPureState &s);
    static JointDensity product(const QubitDensity &probe, const QubitDensity &object);
    static JointDensity maximally_mixed();
    static JointDensity singlet();
    /// Validates invariants; throws InvalidDensity.
    static JointDensity from_matrix(const Mat4 &m);
    /// Convex combination w*a + (1-w)*b, w in [0,1].
    static JointDensity mix(double w, const JointDensity &a, const JointDensity &b);

    const Mat4 &matrix() const { return m_; }
    Complex operator()(int r, int c) const { return m_(r, c); }

    /// U rho U^dagger for a 4x4 unitary.
    JointDensity conjugated(const Mat4 &unitary) const;
    /// Exchanges the probe and object slots.
    JointDensity swapped() const;
    double purity() const;

  private:
    friend QubitDensity partial_trace(const JointDensity &, Role);
    explicit JointDensity(Mat4 m) : m_(std::move(m)) {}
    Mat4 m_;
};

/// Probability-weighted list of pure single-qubit states.
class Ensemble {
  public:
    /// Throws InvalidEnsemble unless every weight is in (0,1] and they sum
    /// to one within 1e-9.
    explicit Ensemble(std::vector<std::pair<double, QubitState>> members);
    static Ensemble uniform(const Basis &basis);

    const std::vector<std::pair<double, QubitState>> &members() const { return members_; }

  private:
    std::vector<std::pair<double, QubitState>> members_;
};

QubitDensity density_of_ensemble(const Ensemble &e);
QubitDensity partial_trace(const JointDensity &rho, Role keep);

/// (<b1|rho|b1>, <b2|rho|b2>).
std::array<double, 2> born_distribution(const QubitDensity &rho, const Basis &b);
/// Cells indexed 2*k + l for probe outcome k in bp and object outcome l in bo.
std::array<double, 4> joint_born_distribution(const JointDensity &rho, const Basis &bp, const Basis &bo);

/// Von Neumann entropy (bits) of the probe's reduced state.
double entanglement_entropy(const JointPureState &s);
double binary_entropy(double p);

/// Uhlmann fidelity (tr|sqrt(a) sqrt(b)|)^2; equals |<a|b>|^2 for pure states.
double fidelity(const JointDensity &a, const JointDensity &b);
double fidelity(const JointPureState &a, const JointPureState &b);

Mat4 kron(const Mat2 &a, const Mat2 &b);
/// Permutation (i,j) -> (j,i) on the joint index.
const Mat4 &swap_operator();
/// Haar-distributed SU(2) element from three independent uniforms in [0,1).
Mat2 haar_unitary(double u1, double u2, double u3);
/// Unitary mapping from.b1 -> to.b1 and from.b2 -> to.b2 (up to phases).
Mat2 basis_map(const Basis &from, const Basis &to);

}  // namespace ifm
