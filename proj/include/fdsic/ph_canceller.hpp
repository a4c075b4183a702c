// SPDX-License-Identifier: Apache-2.0
//
// fd-sic: baseband full-duplex self-interference simulator
// Copyright (C) 2026 The fd-sic authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "fdsic/dsp.hpp"

namespace fdsic::ph {

/// Canceller structure: odd nonlinearity order and the non-causal (pre) and
/// causal (post) memory depth of every branch filter.
struct PHConfig {
    unsigned order = 5;
    std::size_t pre_taps = 2;
    std::size_t post_taps = 2;

    std::size_t branches() const noexcept { return (order + 1) / 2; }
    std::size_t taps() const noexcept { return pre_taps + post_taps + 1; }
    std::size_t coeff_count() const noexcept { return branches() * taps(); }

    void validate() const;
};

/// psi_p(x) = |x|^(p-1) x for odd p >= 1.
cplx ph_basis(cplx x, int p);

/// Basis matrix with columns ordered p-major, then delay k = -pre .. post.
/// Columns are scaled to unit RMS; entry (r, c) times column_scales[c] is
/// psi_p(x[start + r - k]).
struct RegressionMatrix {
    PHConfig cfg;
    Eigen::MatrixXcd columns;
    Eigen::VectorXd column_scales;

    std::size_t rows() const noexcept { return static_cast<std::size_t>(columns.rows()); }
    Eigen::MatrixXcd unscaled() const;
};

/// Estimated effective coefficients f[p, k] plus the bulk delay at which they
/// apply (sample n is regenerated from x[n - delay - k]).
struct PHModel {
    PHConfig cfg;
    std::vector<cplx> coeffs;
    long delay = 0;
    double condition = 1.0; // 2-norm condition number of the scaled basis

    static PHModel zeros(const PHConfig& cfg);

    cplx& at(int p, long k);
    const cplx& at(int p, long k) const;

    std::size_t index(int p, long k) const;
};

constexpr double kMaxCondition = 1e12;

RegressionMatrix build_regression_matrix(const ComplexSignal& x, const PHConfig& cfg,
                                         std::size_t start, std::size_t length);

/// Least-squares fit of x_rf onto the basis by Householder QR of the scaled
/// matrix. Throws EstimationError when the scaled basis condition number
/// exceeds kMaxCondition and InvalidInput when under-determined.
PHModel ls_estimate(const RegressionMatrix& psi, const ComplexSignal& x_rf);

/// Model output over [start, start + length) of x, honouring model.delay.
ComplexSignal regenerate_si(const ComplexSignal& x, const PHModel& model, std::size_t start,
                            std::size_t length);

ComplexSignal cancel(const ComplexSignal& x_rf, const ComplexSignal& x_si_hat);

/// The p = 1 special case of ls_estimate.
PHModel linear_estimate(const ComplexSignal& x, const ComplexSignal& x_rf, std::size_t pre_taps,
                        std::size_t post_taps, std::size_t start, std::size_t length);

/// Reference signal surrounded by zeros so delayed basis rows near the edges
/// read the (zero) pre- and post-history instead of running off the buffer.
struct PaddedReference {
    ComplexSignal samples;
    std::size_t offset; // index of the first original sample

    static PaddedReference make(const ComplexSignal& x, std::size_t pad);
    std::size_t original_size() const noexcept { return samples.size() - 2 * offset; }
};

/// Fits the model at every integer bulk delay in [-search, search] on the
/// first `train_len` samples of x_rf and keeps the delay with the smallest
/// residual. Ties go to the smaller |delay|.
PHModel estimate_aligned(const PaddedReference& ref, const ComplexSignal& x_rf, const PHConfig& cfg,
                         std::size_t train_len, long search);

/// Regenerates the model's SI estimate over the whole original reference span.
ComplexSignal regenerate_full(const PaddedReference& ref, const PHModel& model);

} // namespace fdsic::ph
