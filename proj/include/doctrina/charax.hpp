// Copyright 2026 The Doctrina Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <optional>
#include <vector>

#include "doctrina/regexcat.hpp"

namespace doctrina {

struct SplitReport {
  Index object = kNone;
  Index element = kNone;
  bool verdict = true;       // equality form
  bool prop_verdict = true;  // ≤ form
  /// {"h": arrow} for the first hypothesis met, or the failing (projection, β).
  Json witness;
};

/// α ∈ P(A) against every first projection A×B → A and every β, restricted
/// to `relative` when given (then the ≤ form is not evaluated).
SplitReport is_splitting(const Doctrine& p, Index a, Index alpha, const Subdoctrine* relative = nullptr);
/// P_f(α) splitting for every f into A. The witness names a failing f.
bool is_free(const Doctrine& p, Index a, Index alpha, Json* witness = nullptr);

/// The rule of choice as stated and as splitting of every top.
Report has_rc(const Doctrine& p);

struct CoverAssignment {
  Index aux = kNone;
  Index beta = kNone;  // element of P(A×aux)
};

/// Whether the selected elements form a cover, by the absolute and the
/// relative criterion. `assignment` is filled per element when covered.
Report check_cover(const Doctrine& p, const Subdoctrine& sub,
                   std::vector<std::vector<CoverAssignment>>* assignment = nullptr);

struct CoverResult {
  std::optional<Subdoctrine> cover;
  Report report;
};
/// The free elements, returned when they form a cover.
CoverResult find_cover(const Doctrine& p);

/// Exhaustive ε search for every chosen product A×B and α ∈ P(A×B).
Report epsilon_operators(const Doctrine& p);
/// ε by argmax on the lazy localic doctrine for words with |A|+|B| ≤ bound.
Report localic_epsilon(const LocalicDoctrine& h, std::size_t bound);

/// Projectivity of G-images, covers by them, and embeddings into (A,⊤).
Report check_projectives(const RelationalCategory& reg, const GraphFunctor& g, const Doctrine& p);

struct MainTheoremOptions {
  RelOptions rel;
};
/// Cover status against equivalence of G^reg and G^ex; passes when both
/// agree with the cover status.
Report verify_main_theorem(const DoctrinePtr& p, const Subdoctrine& sub, const MainTheoremOptions& opts = {});

}  // namespace doctrina
