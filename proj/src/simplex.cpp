// Copyright 2026 The rqaoa-wireless Authors
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#include "rqw/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "rqw/errors.hpp"

namespace rqw {

namespace {

struct Budget {
    const std::function<double(const std::vector<double>&)>& f;
    std::size_t limit;
    SimplexResult best;

    bool exhausted() const { return best.evaluations >= limit; }

    double operator()(const std::vector<double>& x) {
        const double v = f(x);
        ++best.evaluations;
        if (best.evaluations == 1 || v < best.value) {
            best.value = v;
            best.point = x;
        }
        return v;
    }
};

}  // namespace

SimplexResult nelder_mead(const std::function<double(const std::vector<double>&)>& f, std::vector<double> x0,
                          const std::vector<double>& steps, const SimplexOptions& options) {
    const std::size_t dim = x0.size();
    if (dim == 0 || steps.size() != dim) throw ConfigError("simplex needs matching point and step sizes");
    if (options.max_evaluations < 1) throw ConfigError("simplex needs at least one evaluation");

    Budget eval{f, options.max_evaluations, {}};
    std::vector<std::vector<double>> pts{x0};
    std::vector<double> vals{eval(x0)};
    for (std::size_t k = 0; k < dim && !eval.exhausted(); ++k) {
        auto p = x0;
        p[k] += steps[k];
        vals.push_back(eval(p));
        pts.push_back(std::move(p));
    }
    if (pts.size() < dim + 1) return eval.best;

    std::vector<std::size_t> order(dim + 1);
    auto affine = [&](const std::vector<double>& a, const std::vector<double>& b, double t) {
        std::vector<double> out(dim);
        for (std::size_t k = 0; k < dim; ++k) out[k] = a[k] + t * (b[k] - a[k]);
        return out;
    };

    while (!eval.exhausted()) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
        const std::size_t lo = order.front();
        const std::size_t hi = order.back();
        const std::size_t second = order[dim - 1];

        double spread = vals[hi] - vals[lo];
        double reach = 0.0;
        for (const auto& p : pts) {
            for (std::size_t k = 0; k < dim; ++k) reach = std::max(reach, std::abs(p[k] - pts[lo][k]));
        }
        if (spread <= options.value_tolerance && reach <= options.step_tolerance) break;

        std::vector<double> centroid(dim, 0.0);
        for (std::size_t i = 0; i <= dim; ++i) {
            if (i == hi) continue;
            for (std::size_t k = 0; k < dim; ++k) centroid[k] += pts[i][k] / static_cast<double>(dim);
        }

        auto reflected = affine(centroid, pts[hi], -1.0);
        const double fr = eval(reflected);
        if (fr < vals[lo]) {
            if (eval.exhausted()) break;
            auto expanded = affine(centroid, pts[hi], -2.0);
            const double fe = eval(expanded);
            if (fe < fr) {
                pts[hi] = std::move(expanded);
                vals[hi] = fe;
            } else {
                pts[hi] = std::move(reflected);
                vals[hi] = fr;
            }
            continue;
        }
        if (fr < vals[second]) {
            pts[hi] = std::move(reflected);
            vals[hi] = fr;
            continue;
        }
        if (eval.exhausted()) break;
        const bool outside = fr < vals[hi];
        auto contracted = outside ? affine(centroid, reflected, 0.5) : affine(centroid, pts[hi], 0.5);
        const double fc = eval(contracted);
        if (fc < std::min(fr, vals[hi])) {
            pts[hi] = std::move(contracted);
            vals[hi] = fc;
            continue;
        }
        for (std::size_t i = 0; i <= dim && !eval.exhausted(); ++i) {
            if (i == lo) continue;
            pts[i] = affine(pts[lo], pts[i], 0.5);
            vals[i] = eval(pts[i]);
        }
    }
    return eval.best;
}

}  // namespace rqw
