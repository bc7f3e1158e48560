// Copyright 2026 The Shadowrem Authors
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

#include <functional>
#include <vector>

namespace shadowrem {

struct GaussLegendreRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

/// Nodes and weights by Newton iteration on the Legendre recurrence.
GaussLegendreRule gauss_legendre(int n);

/// Integral of f over [a, b] with an n-node rule.
double integrate(const std::function<double(double)>& f, double a, double b, int n = 200);

/// Tensor-product rule over [ax, bx] x [ay, by].
double integrate2d(const std::function<double(double, double)>& f, double ax, double bx,
                   double ay, double by, int n = 200);

}  // namespace shadowrem
