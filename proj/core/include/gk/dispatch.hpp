#pragma once

#include "gk/product.hpp"

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gk {

// Which corner embeddings may appear inverted in a product.
enum class Flavor { very_special, special, general };
std::string to_string(Flavor f);
Flavor parse_flavor(const std::string& s);

enum class GeneratorKind {
    hom_left,           // phi . z
    hom_right,          // z . phi
    inv_corner_left,    // e^-1 . z
    inv_corner_right,   // z . e^-1
    unitization_split,  // Delta_A . z
    kappa_left,         // kappa . z
    kappa_right,        // z . kappa
    split_left,         // Delta_s . z
};
std::string to_string(GeneratorKind k);
GeneratorKind parse_generator_kind(const std::string& s);

// The generator multiplied with z. Only the fields of its kind are read.
struct Generator {
    GeneratorKind kind = GeneratorKind::hom_left;
    std::optional<AlgebraHom> hom;
    std::optional<Corner> corner;
    std::optional<L1Element> kappa;
    std::optional<SplitExactSeq> seq;
    std::optional<DiagramCertificate> witness;  // u = iota . v for Delta_s . z
    std::optional<OperatorHom> phi_data;        // z . kappa; defaults to the central hom
    std::optional<ApproxUnit> unit;             // z . kappa; defaults to the unit of z.j
};

// One row of the table: the product and its cells per flavor.
struct TableRow {
    GeneratorKind kind;
    std::string product;
    std::array<std::string, 3> cells;  // very special, special, general
};
const std::array<TableRow, 8>& fusion_table();
const TableRow& table_row(GeneratorKind k);

struct DispatchResult {
    std::string row;
    Flavor flavor = Flavor::very_special;
    std::string cell;
    bool refused = false;
    std::string condition;  // refusals quote the cell's condition

    // The product as a signed sum of level-one elements (one summand except
    // for the split rows) and the word it represents.
    std::vector<std::pair<long, L1Element>> summands;
    MorphismWord word;
    std::vector<DiagramReport> certificates;
    std::optional<PipelineTrace> trace;
    bool converse = true;
    Derivation log;
};

// Routes x . z (or z . x) to its fusion in the given setting. Refusal
// exceptions of the engine come back as refused results; CertificateFailure
// and invalid_argument propagate.
DispatchResult dispatch(const SemigroupG& g, const Generator& x, const L1Element& z, Flavor flavor);

}  // namespace gk
