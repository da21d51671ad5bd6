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

#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace rqw {

struct SimplexOptions {
    std::size_t max_evaluations = 200;
    /// Stop once the spread of simplex values falls below this.
    double value_tolerance = 1e-10;
    /// Stop once every vertex lies within this distance of the best one.
    double step_tolerance = 1e-8;
};

struct SimplexResult {
    std::vector<double> point;
    double value = 0.0;
    std::size_t evaluations = 0;
};

/// Nelder-Mead downhill simplex (reflect, expand, contract, shrink) with
/// standard coefficients 1, 2, 1/2, 1/2. The initial simplex is x0 plus one
/// vertex per coordinate offset by steps[k]. Never evaluates more than
/// max_evaluations points and returns the best point evaluated.
SimplexResult nelder_mead(const std::function<double(const std::vector<double>&)>& f, std::vector<double> x0,
                          const std::vector<double>& steps, const SimplexOptions& options);

}  // namespace rqw
