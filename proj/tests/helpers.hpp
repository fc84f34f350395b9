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

#include <random>

#include "ifm/qcore.hpp"

namespace ifm::testing {

// Gaussian amplitudes give Haar-uniform pure states; independent of the
// library's own samplers.
inline QubitState random_state(std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    return QubitState::from_amplitudes({g(rng), g(rng)}, {g(rng), g(rng)});
}

// QR of a complex Ginibre matrix with phases fixed.
inline Mat2 random_unitary(std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    Mat2 z;
    z << Complex(g(rng), g(rng)), Complex(g(rng), g(rng)), Complex(g(rng), g(rng)), Complex(g(rng), g(rng));
    Eigen::HouseholderQR<Mat2> qr(z);
    Mat2 q = qr.householderQ();
    Mat2 r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int k = 0; k < 2; k++) {
        Complex d = r(k, k);
        q.col(k) *= d / std::abs(d);
    }
    return q;
}

inline double max_abs_diff(const Mat4 &a, const Mat4 &b) { return (a - b).cwiseAbs().maxCoeff(); }
inline double max_abs_diff(const Mat2 &a, const Mat2 &b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace ifm::testing
