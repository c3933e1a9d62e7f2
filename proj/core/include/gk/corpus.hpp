#pragma once

#include "gk/io.hpp"

#include <string>
#include <utility>
#include <vector>

// Small named instances used by the regression corpus, the tests and the
// benchmarks.
namespace gk::corpus {

Vec vec(std::initializer_list<long> xs);
Mat diag(std::initializer_list<long> xs);

// s: d -> J with X = D2, J the first coordinate, s-(c) = (0, c) and
// s+(c) = (c, c) (or s+ = s- when `zero`).
L1Element d2_s(const SemigroupG& g, const std::string& label = "s", bool zero = false);

// t: B -> d with k = D2 inside X_t = D3, t-(b) = (0, 0, b), t+(b) = (b, 0, b)
// (or t+ = t-), and exit psi . e^-1 with psi the diagonal D2 -> M2(d).
L1Element d2_t(const SemigroupG& g, const std::string& label = "t", bool zero = false);

// The product request t . s with the central phi and the chain (1,0) <= (1,1).
ProductRequest d2_product(const SemigroupG& g, bool zero_s = false, bool zero_t = false);

// J = D_p (or M2) inside X = J (+) A with s(a) = (phi(a), a). Index 0..19.
SplitExactSeq axiom_sequence(const SemigroupG& g, std::size_t index);
constexpr std::size_t kAxiomSequences = 20;

// A -> B with X = D3, J = first coordinate, A = D2: s-(a) = (0, a1, a2),
// s+(a) = (a1, a1, a2). With `special` the M2-space over Z/2 is ad(diag(1, w))
// for w = (-1, 1, 1), which is special but not of product form.
L1Element d3_element(const SemigroupG& g, const std::string& label, bool special);

// The corner D2 -> M2(D2) of ad(diag(1, (1, -1))) over Z/2 (special).
Corner special_corner(const SemigroupG& g, const std::string& label);

// A very special chain factor d -> d: X = M2(d) (+) d, J = M2(d),
// s+(a) = (a E11, a), s-(a) = (0, a), exit the canonical corner d -> M2(d).
L1Element chain_factor(const SemigroupG& g, const std::string& label);

// The committed regression files, by file stem.
std::vector<std::pair<std::string, Instance>> regression_instances();

}  // namespace gk::corpus
