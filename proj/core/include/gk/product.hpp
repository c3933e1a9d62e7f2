#pragma once

#include "gk/fusion.hpp"

#include <string>
#include <vector>

namespace gk {

// Inputs of the K-homology x K-theory product t . s.
//  s: level-one element d -> A (s.a = d).
//  t: level-one element B -> d whose exit is psi . e^-1 with e: d -> M_n(d) a
//     very special matrix corner and psi: k -> M_n(d) (k = t.j). Without psi
//     the corner itself must land in k.
//  phi_data: d -> End(X_s), a hom into the multipliers of X_s for which s+-
//     are d-bimodule maps.
//  unit: increasing idempotents of k ending in a unit.
struct ProductRequest {
    std::string label = "x";
    L1Element s;
    L1Element t;
    OperatorHom phi_data;
    ApproxUnit unit;
};

struct LineCertificate {
    std::string step;  // "1->2" means line 1 is the top row, line 2 the bottom row
    DiagramCertificate diagram;
    DiagramReport report;
};

struct PipelineTrace {
    // Lines 1..8 of the construction (index 0 is line 1); line 6 repeats line 4.
    std::vector<L1Element> lines;
    std::vector<LineCertificate> certificates;

    std::size_t n = 0;                // matrix size of the corner e
    bool s_very_special = false;      // M2-space of s
    Speciality output_class = Speciality::neither;

    // Line 3: x = M_n(X) box_{S-} k with its embedding into M_n(X) (+) k.
    Subalgebra xbold;
    AlgebraHom S_minus, S_plus;       // k -> x
    std::vector<Mat> theta;           // theta(k_i) acting on x
    std::vector<Mat> T_minus;         // T-(b_i) acting on x
    std::size_t stabilization_index = 0;
    AdjointableExtension theta_bar_minus;
    AdjointableExtension theta_bar_plus;

    // Line 7 lives in L(x) (+) B with L(x) inside End(x); this maps its
    // carrier coordinates to (flattened operator on x, b).
    Mat line7_to_operators;

    // Delta_{t-} . line 3 = line 4 through the split-exactness relation.
    bool split_step_ok = false;
    Derivation split_step;
    // e_J2 . e_J1^-1 = id, which lets the exits of lines 5 and 6 agree.
    bool exit_rotation_ok = false;
    Derivation exit_rotation;

    // x+-(b) = (S+-((t+ - t-)(b)) + T-(b)) (+) b against z+- o t+ on each b.
    bool closed_form_ok = false;
    std::string closed_form_witness;

    bool ok() const;
};

struct ProductResult {
    L1Element x;
    PipelineTrace trace;
};

// Throws Refusal when a hypothesis of the product fails (with the failing
// hypothesis as the condition) and CertificateFailure when a construction
// step does not verify.
ProductResult product_khom_ktheory(const SemigroupG& g, const ProductRequest& req);

// The default phi_data when d = c: each idempotent e goes to the operator
// gamma-_e on X_s; for a group this is c -> c . id.
OperatorHom central_phi(const SemigroupG& g, const L1Element& s);

}  // namespace gk
