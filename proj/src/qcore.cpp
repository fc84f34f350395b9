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

#include "ifm/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace ifm {

namespace {

constexpr double kZeroNorm = 1e-12;
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

template <typename V>
void check_finite(const V &v) {
    for (Eigen::Index k = 0; k < v.size(); k++) {
        if (!std::isfinite(v[k].real()) || !std::isfinite(v[k].imag())) {
            throw NonFinite("amplitude " + std::to_string(k) + " is not finite");
        }
    }
}

// First amplitude with magnitude > 1e-12 becomes real and non-negative.
template <typename V>
V canonicalize(V v) {
    double n = v.norm();
    if (!(n > kZeroNorm)) {
        throw ZeroVector("state vector has norm " + std::to_string(n) + " <= 1e-12");
    }
    v /= n;
    for (Eigen::Index k = 0; k < v.size(); k++) {
        double mag = std::abs(v[k]);
        if (mag > kZeroNorm) {
            v *= std::conj(v[k]) / mag;
            v[k] = Complex(v[k].real(), 0.0);
            break;
        }
    }
    return v;
}

template <typename M>
void check_density(const M &m, const char *what) {
    for (Eigen::Index r = 0; r < m.rows(); r++) {
        for (Eigen::Index c = 0; c < m.cols(); c++) {
            if (!std::isfinite(m(r, c).real()) || !std::isfinite(m(r, c).imag())) {
                throw InvalidDensity(std::string(what) + " has a non-finite entry");
            }
        }
    }
    double herm = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (herm > kStateTol) {
        throw InvalidDensity(std::string(what) + " is not Hermitian (deviation " + std::to_string(herm) + ")");
    }
    Complex tr = m.trace();
    if (std::abs(tr - Complex(1.0, 0.0)) > kStateTol) {
        throw InvalidDensity(std::string(what) + " does not have unit trace");
    }
    M h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<M> es(h, Eigen::EigenvaluesOnly);
    double min_ev = es.eigenvalues().minCoeff();
    if (min_ev < -kStateTol) {
        throw InvalidDensity(std::string(what) + " has negative eigenvalue " + std::to_string(min_ev));
    }
}

Mat4 sqrt_psd(const Mat4 &m) {
    Eigen::SelfAdjointEigenSolver<Mat4> es(m);
    Eigen::Vector4d ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * ev.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
}

// Eigenvalues of a 2x2 Hermitian matrix, ascending.
std::array<double, 2> hermitian_eigenvalues(const Mat2 &m) {
    double half_tr = 0.5 * (m(0, 0).real() + m(1, 1).real());
    double det = (m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)).real();
    double disc = std::sqrt(std::max(0.0, half_tr * half_tr - det));
    return {half_tr - disc, half_tr + disc};
}

}  // namespace

// ---------------------------------------------------------------- QubitState

QubitState QubitState::x() { return QubitState(Vec2(1.0, 0.0)); }
QubitState QubitState::y() { return QubitState(Vec2(0.0, 1.0)); }
QubitState QubitState::sigma_plus() { return QubitState(Vec2(kInvSqrt2, Complex(0, kInvSqrt2))); }
QubitState QubitState::sigma_minus() { return QubitState(Vec2(kInvSqrt2, Complex(0, -kInvSqrt2))); }
QubitState QubitState::diag_plus() { return QubitState(Vec2(kInvSqrt2, kInvSqrt2)); }
QubitState QubitState::diag_minus() { return QubitState(Vec2(kInvSqrt2, -kInvSqrt2)); }

QubitState QubitState::from_amplitudes(Complex ax, Complex ay) { return from_vector(Vec2(ax, ay)); }

QubitState QubitState::from_vector(const Vec2 &v) {
    check_finite(v);
    return QubitState(canonicalize(v));
}

QubitState QubitState::orthogonal() const {
    return from_vector(Vec2(-std::conj(amps_[1]), std::conj(amps_[0])));
}

QubitState QubitState::transformed(const Mat2 &unitary) const { return from_vector(unitary * amps_); }

bool QubitState::approx_equal(const QubitState &other, double tol) const {
    return overlap_probability(*this, other) >= 1.0 - tol;
}

std::string QubitState::str() const {
    std::ostringstream out;
    out.precision(6);
    out << "(" << amps_[0].real() << (amps_[0].imag() < 0 ? "" : "+") << amps_[0].imag() << "i, "
        << amps_[1].real() << (amps_[1].imag() < 0 ? "" : "+") << amps_[1].imag() << "i)";
    return out.str();
}

QubitState make_state(Complex ax, Complex ay) { return QubitState::from_amplitudes(ax, ay); }

double overlap_probability(const QubitState &a, const QubitState &b) {
    return std::min(1.0, std::norm(a.amplitudes().dot(b.amplitudes())));
}

// ---------------------------------------------------------------- Bloch

double BlochVector::norm() const { return std::sqrt(dot(*this)); }

BlochVector to_bloch(const QubitState &s) {
    Complex a = s[0];
    Complex b = s[1];
    Complex c = std::conj(a) * b;
    return {2.0 * c.real(), 2.0 * c.imag(), std::norm(a) - std::norm(b)};
}

QubitState from_bloch(const BlochVector &v) {
    double n = v.norm();
    if (!(n > kZeroNorm)) {
        throw ZeroVector("Bloch vector has zero length");
    }
    double theta = std::acos(std::clamp(v.n3 / n, -1.0, 1.0));
    double phi = std::atan2(v.n2, v.n1);
    return from_bloch_angles(theta, phi);
}

QubitState from_bloch_angles(double theta, double phi) {
    if (!std::isfinite(theta) || !std::isfinite(phi)) {
        throw NonFinite("Bloch angles must be finite");
    }
    return QubitState::from_amplitudes(std::cos(theta / 2), std::polar(std::sin(theta / 2), phi));
}

// ---------------------------------------------------------------- Basis

Basis Basis::xy() { return Basis(QubitState::x(), QubitState::y(), BasisLabel::xy); }
Basis Basis::sigma() { return Basis(QubitState::sigma_plus(), QubitState::sigma_minus(), BasisLabel::sigma); }
Basis Basis::diag() { return Basis(QubitState::diag_plus(), QubitState::diag_minus(), BasisLabel::diag); }

Basis Basis::from_states(const QubitState &b1, const QubitState &b2) {
    double ip = std::abs(b1.amplitudes().dot(b2.amplitudes()));
    if (ip > kStateTol) {
        throw InvalidBasis("basis vectors are not orthogonal (|<b1|b2>| = " + std::to_string(ip) + ")");
    }
    for (const Basis &named : {xy(), sigma(), diag()}) {
        if (b1.approx_equal(named.b1(), kExactTol) && b2.approx_equal(named.b2(), kExactTol)) {
            return named;
        }
    }
    return Basis(b1, b2, BasisLabel::custom);
}

Basis Basis::completing(const QubitState &b1) { return from_states(b1, b1.orthogonal()); }

std::string Basis::name() const {
    switch (label_) {
        case BasisLabel::xy:
            return "xy";
        case BasisLabel::sigma:
            return "sigma";
        case BasisLabel::diag:
            return "diag";
        case BasisLabel::custom:
            break;
    }
    return "custom";
}

std::array<Complex, 2> change_basis(const QubitState &s, const Basis &target) {
    return {target.b1().amplitudes().dot(s.amplitudes()), target.b2().amplitudes().dot(s.amplitudes())};
}

QubitState reassemble(const std::array<Complex, 2> &coords, const Basis &basis) {
    return QubitState::from_vector(coords[0] * basis.b1().amplitudes() + coords[1] * basis.b2().amplitudes());
}

// ---------------------------------------------------------------- densities

QubitDensity QubitDensity::pure(const QubitState &s) {
    return QubitDensity(s.amplitudes() * s.amplitudes().adjoint());
}

QubitDensity QubitDensity::maximally_mixed() { return QubitDensity(Mat2::Identity() * 0.5); }

QubitDensity QubitDensity::from_matrix(const Mat2 &m) {
    check_density(m, "qubit density");
    return QubitDensity(0.5 * (m + m.adjoint()));
}

double QubitDensity::purity() const { return (m_ * m_).trace().real(); }

JointPureState JointPureState::singlet() {
    return JointPureState(Vec4(0.0, kInvSqrt2, -kInvSqrt2, 0.0));
}

JointPureState JointPureState::from_vector(const Vec4 &v) {
    check_finite(v);
    return JointPureState(canonicalize(v));
}

JointPureState tensor_product(const QubitState &probe, const QubitState &object) {
    Vec4 v;
    for (int i = 0; i < 2; i++) {
        for (int j = 0; j < 2; j++) {
            v[2 * i + j] = probe[i] * object[j];
        }
    }
    return JointPureState::from_vector(v);
}

JointDensity JointDensity::pure(const JointPureState &s) {
    return JointDensity(s.amplitudes() * s.amplitudes().adjoint());
}

JointDensity JointDensity::product(const QubitDensity &probe, const QubitDensity &object) {
    return JointDensity(kron(probe.matrix(), object.matrix()));
}

JointDensity JointDensity::maximally_mixed() { return JointDensity(Mat4::Identity() * 0.25); }

JointDensity JointDensity::singlet() { return pure(JointPureState::singlet()); }

JointDensity JointDensity::from_matrix(const Mat4 &m) {
    check_density(m, "joint density");
    return JointDensity(0.5 * (m + m.adjoint()));
}

JointDensity JointDensity::mix(double w, const JointDensity &a, const JointDensity &b) {
    if (!(w >= 0.0 && w <= 1.0)) {
        throw InvalidDensity("mixture weight " + std::to_string(w) + " outside [0,1]");
    }
    return JointDensity(w * a.m_ + (1.0 - w) * b.m_);
}

JointDensity JointDensity::conjugated(const Mat4 &unitary) const {
    Mat4 r = unitary * m_ * unitary.adjoint();
    return JointDensity(0.5 * (r + r.adjoint()));
}

JointDensity JointDensity::swapped() const {
    const Mat4 &s = swap_operator();
    return JointDensity(s * m_ * s);
}

double JointDensity::purity() const { return (m_ * m_).trace().real(); }

Ensemble::Ensemble(std::vector<std::pair<double, QubitState>> members) : members_(std::move(members)) {
    if (members_.empty()) {
        throw InvalidEnsemble("ensemble is empty");
    }
    double total = 0;
    for (const auto &[w, s] : members_) {
        if (!(w > 0.0 && w <= 1.0)) {
            throw InvalidEnsemble("ensemble weight " + std::to_string(w) + " outside (0,1]");
        }
        total += w;
    }
    if (std::abs(total - 1.0) > kStateTol) {
        throw InvalidEnsemble("ensemble weights sum to " + std::to_string(total));
    }
}

Ensemble Ensemble::uniform(const Basis &basis) { return Ensemble({{0.5, basis.b1()}, {0.5, basis.b2()}}); }

QubitDensity density_of_ensemble(const Ensemble &e) {
    Mat2 m = Mat2::Zero();
    for (const auto &[w, s] : e.members()) {
        m += w * s.amplitudes() * s.amplitudes().adjoint();
    }
    return QubitDensity(m);
}

QubitDensity partial_trace(const JointDensity &rho, Role keep) {
    const Mat4 &m = rho.m_;
    Mat2 r = Mat2::Zero();
    for (int a = 0; a < 2; a++) {
        for (int b = 0; b < 2; b++) {
            for (int k = 0; k < 2; k++) {
                r(a, b) += keep == Role::probe ? m(2 * a + k, 2 * b + k) : m(2 * k + a, 2 * k + b);
            }
        }
    }
    return QubitDensity(r);
}

std::array<double, 2> born_distribution(const QubitDensity &rho, const Basis &b) {
    std::array<double, 2> p{};
    for (int k = 0; k < 2; k++) {
        const Vec2 &v = b[k].amplitudes();
        p[k] = std::clamp(v.dot(rho.matrix() * v).real(), 0.0, 1.0);
    }
    return p;
}

std::array<double, 4> joint_born_distribution(const JointDensity &rho, const Basis &bp, const Basis &bo) {
    std::array<double, 4> p{};
    for (int k = 0; k < 2; k++) {
        for (int l = 0; l < 2; l++) {
            Vec4 v = tensor_product(bp[k], bo[l]).amplitudes();
            p[2 * k + l] = std::clamp(v.dot(rho.matrix() * v).real(), 0.0, 1.0);
        }
    }
    return p;
}

double binary_entropy(double p) {
    double h = 0;
    for (double t : {p, 1.0 - p}) {
        if (t > 0) {
            h -= t * std::log2(t);
        }
    }
    return h;
}

double entanglement_entropy(const JointPureState &s) {
    QubitDensity reduced = partial_trace(JointDensity::pure(s), Role::probe);
    auto ev = hermitian_eigenvalues(reduced.matrix());
    return std::clamp(binary_entropy(std::clamp(ev[1], 0.0, 1.0)), 0.0, 1.0);
}

double fidelity(const JointDensity &a, const JointDensity &b) {
    // Singular values of sqrt(a) sqrt(b) stay accurate for rank-deficient
    // inputs, unlike eigenvalues of sqrt(a) b sqrt(a).
    Mat4 m = sqrt_psd(a.matrix()) * sqrt_psd(b.matrix());
    Eigen::JacobiSVD<Mat4> svd(m);
    double s = svd.singularValues().sum();
    return std::clamp(s * s, 0.0, 1.0);
}

double fidelity(const JointPureState &a, const JointPureState &b) {
    return std::min(1.0, std::norm(a.amplitudes().dot(b.amplitudes())));
}

// ---------------------------------------------------------------- operators

Mat4 kron(const Mat2 &a, const Mat2 &b) {
    Mat4 r;
    for (int i = 0; i < 2; i++) {
        for (int k = 0; k < 2; k++) {
            for (int j = 0; j < 2; j++) {
                for (int l = 0; l < 2; l++) {
                    r(2 * i + j, 2 * k + l) = a(i, k) * b(j, l);
                }
            }
        }
    }
    return r;
}

const Mat4 &swap_operator() {
    static const Mat4 s = [] {
        Mat4 m = Mat4::Zero();
        for (int i = 0; i < 2; i++) {
            for (int j = 0; j < 2; j++) {
                m(2 * j + i, 2 * i + j) = 1.0;
            }
        }
        return m;
    }();
    return s;
}

Mat2 haar_unitary(double u1, double u2, double u3) {
    double psi = 2 * std::numbers::pi * u1;
    double chi = 2 * std::numbers::pi * u2;
    double phi = std::asin(std::sqrt(std::clamp(u3, 0.0, 1.0)));
    Mat2 u;
    u(0, 0) = std::polar(std::cos(phi), psi);
    u(0, 1) = std::polar(std::sin(phi), chi);
    u(1, 0) = -std::polar(std::sin(phi), -chi);
    u(1, 1) = std::polar(std::cos(phi), -psi);
    return u;
}

Mat2 basis_map(const Basis &from, const Basis &to) {
    return to.b1().amplitudes() * from.b1().amplitudes().adjoint() +
           to.b2().amplitudes() * from.b2().amplitudes().adjoint();
}

}  // namespace ifm
