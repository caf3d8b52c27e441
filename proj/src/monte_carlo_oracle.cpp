// SPDX-License-Identifier: Apache-2.0
//
// mmee: load-adaptive massive MIMO energy-efficiency simulator
// Copyright (C) 2026 The mmee authors
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

#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include "mmee/rate_model.hpp"

namespace mmee
{

namespace
{

using Mat = Eigen::MatrixXcd;

class ComplexGaussian
{
  public:
    explicit ComplexGaussian(std::uint64_t seed) : rng_(seed) {}

    // Fills `m` with i.i.d. CN(0, variance) entries.
    void fill(Mat &m, double variance)
    {
        const double s = std::sqrt(0.5 * variance);
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            for (Eigen::Index i = 0; i < m.rows(); ++i)
                m(i, j) = {s * normal_(rng_), s * normal_(rng_)};
    }

  private:
    std::mt19937_64 rng_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

// Column-normalised zero-forcing precoder for channel matrix `h` (antennas x users).
// Returns false for a numerically singular draw.
bool zf_precoder(const Mat &h, Mat &gram, Eigen::LLT<Mat> &llt, Mat &w)
{
    gram.noalias() = h.adjoint() * h;
    llt.compute(gram);
    if (llt.info() != Eigen::Success)
        return false;
    w = llt.solve(h.adjoint()).adjoint();
    for (Eigen::Index j = 0; j < w.cols(); ++j)
    {
        const double norm = w.col(j).norm();
        if (!(norm > 0.0) || !std::isfinite(norm))
            return false;
        w.col(j) /= norm;
    }
    return true;
}

} // namespace

OracleResult monte_carlo_rate_oracle(const OracleInstance &inst, const SystemParams &params, std::uint64_t trials,
                                     std::uint64_t seed)
{
    if (inst.users < 1 || inst.antennas < inst.users + 1)
        throw std::invalid_argument("monte_carlo_rate_oracle: need antennas >= users + 1 >= 2");
    if (trials < 1)
        throw std::invalid_argument("monte_carlo_rate_oracle: trials must be at least 1");
    if (!(inst.own_gain > 0.0))
        throw std::invalid_argument("monte_carlo_rate_oracle: own gain must be positive");
    for (const auto &d : inst.interferers)
        if (d.users < 1 || d.antennas < d.users + 1 || !(d.gain >= 0.0))
            throw std::invalid_argument("monte_carlo_rate_oracle: invalid interferer");

    const double p = params.antenna_power_w;
    const double noise = params.noise_power_w;
    const int n = inst.users;
    const double signal_scale = p * inst.antennas / n;

    ComplexGaussian gen(seed);
    Mat h(inst.antennas, n), gram, w;
    Eigen::LLT<Mat> llt;

    std::vector<Mat> hd(inst.interferers.size()), wd(inst.interferers.size()), gramd(inst.interferers.size());
    std::vector<Eigen::LLT<Mat>> lltd(inst.interferers.size());
    std::vector<Mat> link(inst.interferers.size());
    for (std::size_t d = 0; d < inst.interferers.size(); ++d)
    {
        hd[d].resize(inst.interferers[d].antennas, inst.interferers[d].users);
        link[d].resize(inst.interferers[d].antennas, n);
    }

    double sum = 0.0, sum_sq = 0.0;
    for (std::uint64_t t = 0; t < trials; ++t)
    {
        // Redraw on singular channels; this has probability zero.
        do
            gen.fill(h, inst.own_gain);
        while (!zf_precoder(h, gram, llt, w));

        Eigen::VectorXd interference = Eigen::VectorXd::Constant(n, noise);
        for (std::size_t d = 0; d < inst.interferers.size(); ++d)
        {
            const auto &cfg = inst.interferers[d];
            do
                gen.fill(hd[d], 1.0);
            while (!zf_precoder(hd[d], gramd[d], lltd[d], wd[d]));
            gen.fill(link[d], cfg.gain);
            const double per_user = p * cfg.antennas / cfg.users;
            // |h_dck^H w_di|^2 summed over the interferer's users, for each observed user k
            const Mat proj = link[d].adjoint() * wd[d];
            interference += per_user * proj.cwiseAbs2().rowwise().sum();
        }

        double draw = 0.0;
        for (int k = 0; k < n; ++k)
        {
            const double gain = std::norm((h.col(k).adjoint() * w.col(k))(0, 0));
            draw += std::log2(1.0 + signal_scale * gain / interference(k));
        }
        draw *= params.pre_log_factor() / n;
        sum += draw;
        sum_sq += draw * draw;
    }

    OracleResult res;
    res.trials = trials;
    const double tn = static_cast<double>(trials);
    res.mean_rate = sum / tn;
    if (trials > 1)
    {
        const double var = std::max(0.0, (sum_sq - tn * res.mean_rate * res.mean_rate) / (tn - 1.0));
        res.std_error = std::sqrt(var / tn);
    }
    return res;
}

} // namespace mmee
