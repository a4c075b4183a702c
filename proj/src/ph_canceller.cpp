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

#include "fdsic/ph_canceller.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <string>

#include "fdsic/error.hpp"

namespace fdsic::ph {

void PHConfig::validate() const
{
    if (order < 1 || order % 2 == 0)
        throw InvalidInput("PH nonlinearity order must be odd and >= 1, got " + std::to_string(order));
}

cplx ph_basis(cplx x, int p)
{
    if (p < 1 || p % 2 == 0)
        throw InvalidInput("PH basis order must be odd and >= 1, got " + std::to_string(p));
    const double m = std::norm(x);
    double w = 1.0;
    for (int i = 1; i < p; i += 2)
        w *= m;
    return w * x;
}

Eigen::MatrixXcd RegressionMatrix::unscaled() const
{
    return columns * column_scales.cast<cplx>().asDiagonal();
}

PHModel PHModel::zeros(const PHConfig& cfg)
{
    cfg.validate();
    PHModel m;
    m.cfg = cfg;
    m.coeffs.assign(cfg.coeff_count(), cplx{});
    return m;
}

std::size_t PHModel::index(int p, long k) const
{
    if (p < 1 || p % 2 == 0 || static_cast<unsigned>(p) > cfg.order)
        throw InvalidInput("branch order " + std::to_string(p) + " not in model");
    const long pre = static_cast<long>(cfg.pre_taps);
    const long post = static_cast<long>(cfg.post_taps);
    if (k < -pre || k > post)
        throw InvalidInput("delay " + std::to_string(k) + " outside model memory");
    return static_cast<std::size_t>((p - 1) / 2) * cfg.taps() + static_cast<std::size_t>(k + pre);
}

cplx& PHModel::at(int p, long k) { return coeffs.at(index(p, k)); }
const cplx& PHModel::at(int p, long k) const { return coeffs.at(index(p, k)); }

namespace {

// Branch values psi_1, psi_3, ... of one sample.
void basis_row(cplx x, std::size_t branches, cplx* out)
{
    const double m = std::norm(x);
    cplx v = x;
    for (std::size_t b = 0; b < branches; ++b) {
        out[b] = v;
        v *= m;
    }
}

void require_span(long first, long last, std::size_t size, const char* what)
{
    if (first < 0 || last >= static_cast<long>(size)) {
        std::ostringstream os;
        os << what << " needs reference samples [" << first << ", " << last << "] but only "
           << size << " are available";
        throw InvalidInput(os.str());
    }
}

} // namespace

RegressionMatrix build_regression_matrix(const ComplexSignal& x, const PHConfig& cfg,
                                         std::size_t start, std::size_t length)
{
    cfg.validate();
    if (length == 0)
        throw InvalidInput("regression matrix needs at least one row");
    const long pre = static_cast<long>(cfg.pre_taps);
    const long post = static_cast<long>(cfg.post_taps);
    const long s = static_cast<long>(start);
    require_span(s - post, s + pre + static_cast<long>(length) - 1, x.size(), "regression matrix");

    const std::size_t nb = cfg.branches();
    const std::size_t nt = cfg.taps();
    const std::size_t span = length + nt - 1;

    // Basis values once per input sample, then laid out as delayed copies.
    std::vector<cplx> psi(span * nb);
    const std::size_t first = static_cast<std::size_t>(s - post);
    for (std::size_t i = 0; i < span; ++i)
        basis_row(x[first + i], nb, &psi[i * nb]);

    RegressionMatrix m;
    m.cfg = cfg;
    m.columns.resize(static_cast<Eigen::Index>(length), static_cast<Eigen::Index>(nb * nt));
    for (std::size_t b = 0; b < nb; ++b) {
        for (std::size_t j = 0; j < nt; ++j) {
            // column j <-> delay k = j - pre; sample index start + r - k
            const std::size_t col = b * nt + j;
            const std::size_t base = static_cast<std::size_t>(post + pre) - j;
            for (std::size_t r = 0; r < length; ++r)
                m.columns(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(col)) =
                    psi[(base + r) * nb + b];
        }
    }

    m.column_scales.resize(m.columns.cols());
    for (Eigen::Index c = 0; c < m.columns.cols(); ++c) {
        const double rms = m.columns.col(c).norm() / std::sqrt(static_cast<double>(length));
        const double scale = rms > 0.0 ? rms : 1.0;
        m.column_scales(c) = scale;
        m.columns.col(c) /= scale;
    }
    return m;
}

namespace {

struct Solution {
    Eigen::VectorXcd scaled_coeffs;
    double residual_power;
    double condition;
};

Solution solve_scaled(const RegressionMatrix& psi, const ComplexSignal& x_rf)
{
    const auto rows = psi.columns.rows();
    const auto cols = psi.columns.cols();
    if (static_cast<std::size_t>(rows) != x_rf.size())
        throw InvalidInput("observation length " + std::to_string(x_rf.size()) +
                           " does not match regression rows " + std::to_string(rows));
    if (rows < cols)
        throw InvalidInput("least squares is under-determined: " + std::to_string(rows) +
                           " rows for " + std::to_string(cols) + " coefficients");

    const Eigen::Map<const Eigen::VectorXcd> y(x_rf.samples().data(), rows);
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(psi.columns);

    const Eigen::MatrixXcd r = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
    const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXcd>(r).singularValues();
    const double smin = sv(sv.size() - 1);
    const double cond = smin > 0.0 ? sv(0) / smin : std::numeric_limits<double>::infinity();
    if (!(cond <= kMaxCondition)) {
        std::ostringstream os;
        os << "regression matrix is numerically rank deficient (condition estimate " << cond << ")";
        throw EstimationError(os.str(), cond);
    }

    Solution s;
    s.scaled_coeffs = qr.solve(y);
    s.residual_power = (y - psi.columns * s.scaled_coeffs).squaredNorm() / static_cast<double>(rows);
    s.condition = cond;
    return s;
}

PHModel to_model(const RegressionMatrix& psi, const Solution& s)
{
    PHModel m = PHModel::zeros(psi.cfg);
    for (std::size_t c = 0; c < m.coeffs.size(); ++c) {
        const auto i = static_cast<Eigen::Index>(c);
        m.coeffs[c] = s.scaled_coeffs(i) / psi.column_scales(i);
    }
    m.condition = s.condition;
    return m;
}

} // namespace

PHModel ls_estimate(const RegressionMatrix& psi, const ComplexSignal& x_rf)
{
    return to_model(psi, solve_scaled(psi, x_rf));
}

ComplexSignal regenerate_si(const ComplexSignal& x, const PHModel& model, std::size_t start,
                            std::size_t length)
{
    const auto& cfg = model.cfg;
    cfg.validate();
    if (model.coeffs.size() != cfg.coeff_count())
        throw InvalidInput("model coefficient count does not match its configuration");
    const long pre = static_cast<long>(cfg.pre_taps);
    const long post = static_cast<long>(cfg.post_taps);
    const long s = static_cast<long>(start) - model.delay;
    require_span(s - post, s + pre + static_cast<long>(length) - 1, x.size(), "SI regeneration");

    const std::size_t nb = cfg.branches();
    const std::size_t nt = cfg.taps();
    const std::size_t span = length + nt - 1;
    const std::size_t first = static_cast<std::size_t>(s - post);

    std::vector<cplx> psi(span * nb);
    for (std::size_t i = 0; i < span; ++i)
        basis_row(x[first + i], nb, &psi[i * nb]);

    std::vector<cplx> out(length);
    for (std::size_t r = 0; r < length; ++r) {
        cplx acc{};
        for (std::size_t b = 0; b < nb; ++b) {
            for (std::size_t j = 0; j < nt; ++j) {
                const std::size_t base = static_cast<std::size_t>(post + pre) - j;
                acc += model.coeffs[b * nt + j] * psi[(base + r) * nb + b];
            }
        }
        out[r] = acc;
    }
    return ComplexSignal(std::move(out), x.sample_rate_hz());
}

ComplexSignal cancel(const ComplexSignal& x_rf, const ComplexSignal& x_si_hat)
{
    return x_rf - x_si_hat;
}

PHModel linear_estimate(const ComplexSignal& x, const ComplexSignal& x_rf, std::size_t pre_taps,
                        std::size_t post_taps, std::size_t start, std::size_t length)
{
    const PHConfig cfg{1, pre_taps, post_taps};
    return ls_estimate(build_regression_matrix(x, cfg, start, length), x_rf);
}

PaddedReference PaddedReference::make(const ComplexSignal& x, std::size_t pad)
{
    std::vector<cplx> buf(x.size() + 2 * pad);
    std::copy(x.samples().begin(), x.samples().end(), buf.begin() + static_cast<std::ptrdiff_t>(pad));
    return PaddedReference{ComplexSignal(std::move(buf), x.sample_rate_hz()), pad};
}

PHModel estimate_aligned(const PaddedReference& ref, const ComplexSignal& x_rf, const PHConfig& cfg,
                         std::size_t train_len, long search)
{
    cfg.validate();
    if (search < 0)
        throw InvalidInput("alignment search range must be non-negative");
    if (train_len > x_rf.size())
        throw InvalidInput("training window longer than the observation");
    const ComplexSignal y = x_rf.slice(0, train_len);

    PHModel best;
    double best_residual = std::numeric_limits<double>::infinity();
    bool found = false;
    double worst_condition = 0.0;

    // Order 0, -1, +1, -2, +2, ... so ties keep the smallest |delay|.
    for (long step = 0; step <= 2 * search; ++step) {
        const long d = (step % 2 == 0) ? step / 2 : -(step + 1) / 2;
        const long start = static_cast<long>(ref.offset) - d;
        if (start < 0)
            throw InvalidInput("reference padding too small for the alignment search");
        const auto psi = build_regression_matrix(ref.samples, cfg, static_cast<std::size_t>(start), train_len);
        try {
            const Solution s = solve_scaled(psi, y);
            if (s.residual_power < best_residual) {
                best_residual = s.residual_power;
                best = to_model(psi, s);
                best.delay = d;
                found = true;
            }
        } catch (const EstimationError& e) {
            worst_condition = std::max(worst_condition, e.condition());
        }
    }
    if (!found) {
        std::ostringstream os;
        os << "no alignment candidate gave a well-conditioned basis (condition estimate "
           << worst_condition << ")";
        throw EstimationError(os.str(), worst_condition);
    }
    return best;
}

ComplexSignal regenerate_full(const PaddedReference& ref, const PHModel& model)
{
    return regenerate_si(ref.samples, model, ref.offset, ref.original_size());
}

} // namespace fdsic::ph
