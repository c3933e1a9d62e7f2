#include "gk/dispatch.hpp"

#include <stdexcept>

namespace gk {

namespace {

const char* kNoFormula = "N: no formula known in this setting";
const char* kNotYet = "NY: not yet available in this setting";
const char* kStub = "interface stub: formulas in external reference";

std::size_t rank_of(Flavor f) { return static_cast<std::size_t>(f); }

std::size_t rank_of(Speciality s) {
    switch (s) {
        case Speciality::very_special: return 0;
        case Speciality::special: return 1;
        case Speciality::neither: return 2;
    }
    return 2;
}

// A corner may enter a setting at most as general as the setting itself.
void check_setting(const Corner& e, Flavor f) {
    if (rank_of(e.cls) > rank_of(f))
        throw std::invalid_argument("corner " + e.label + " is " + corner_class_name(e.cls) +
                                    ", outside the " + to_string(f) + " setting");
}

template <class T>
const T& need(const std::optional<T>& v, const char* what, const std::string& row) {
    if (!v) throw std::invalid_argument(row + ": generator has no " + what);
    return *v;
}

void take(DispatchResult& r, const SemigroupG& g, const FusionResult& f) {
    r.summands = {{1, f.out}};
    r.word = level_one_word(g, f.out);
    r.certificates = f.reports;
}

void take(DispatchResult& r, const SplitFusion& f) {
    r.summands = f.summands;
    r.word = f.word;
    r.certificates = f.certificates;
    r.converse = f.converse;
    r.log = f.converse_log;
}

ApproxUnit default_unit(const AlgPtr& k) {
    if (!k->unit()) throw std::invalid_argument("z . kappa: " + k->label() + " has no unit; pass an approximate unit");
    return ApproxUnit{k, {*k->unit()}};
}

}  // namespace

std::string to_string(Flavor f) {
    switch (f) {
        case Flavor::very_special: return "very_special";
        case Flavor::special: return "special";
        case Flavor::general: return "general";
    }
    return "general";
}

Flavor parse_flavor(const std::string& s) {
    for (Flavor f : {Flavor::very_special, Flavor::special, Flavor::general})
        if (to_string(f) == s) return f;
    throw std::invalid_argument("unknown flavor '" + s + "'");
}

const std::array<TableRow, 8>& fusion_table() {
    static const std::array<TableRow, 8> rows = {{
        {GeneratorKind::hom_left, "phi . z", {"Y", "Y", "Y"}},
        {GeneratorKind::hom_right, "z . phi", {"Y", "Y", "Y"}},
        {GeneratorKind::inv_corner_left, "e^-1 . z", {"Y", "Y", "<=> exists u in L1: e . u = z"}},
        {GeneratorKind::inv_corner_right, "z . e^-1", {"Y", "Y", "Y"}},
        {GeneratorKind::unitization_split, "Delta_A . z", {"Y", "Y", "N"}},
        {GeneratorKind::kappa_left, "kappa . z", {"Y", "NY", "N"}},
        {GeneratorKind::kappa_right, "z . kappa", {"Y", "NY", "N"}},
        {GeneratorKind::split_left, "Delta_s . z", {"N", "N", "<=> exists u in L1: i . u = z"}},
    }};
    return rows;
}

const TableRow& table_row(GeneratorKind k) {
    for (const auto& r : fusion_table())
        if (r.kind == k) return r;
    throw std::logic_error("no table row");
}

std::string to_string(GeneratorKind k) {
    switch (k) {
        case GeneratorKind::hom_left: return "hom_left";
        case GeneratorKind::hom_right: return "hom_right";
        case GeneratorKind::inv_corner_left: return "inv_corner_left";
        case GeneratorKind::inv_corner_right: return "inv_corner_right";
        case GeneratorKind::unitization_split: return "unitization_split";
        case GeneratorKind::kappa_left: return "kappa_left";
        case GeneratorKind::kappa_right: return "kappa_right";
        case GeneratorKind::split_left: return "split_left";
    }
    return "?";
}

GeneratorKind parse_generator_kind(const std::string& s) {
    for (const auto& r : fusion_table())
        if (to_string(r.kind) == s) return r.kind;
    throw std::invalid_argument("unknown generator kind '" + s + "'");
}

DispatchResult dispatch(const SemigroupG& g, const Generator& x, const L1Element& z, Flavor flavor) {
    const TableRow& row = table_row(x.kind);
    DispatchResult r;
    r.row = row.product;
    r.flavor = flavor;
    r.cell = row.cells[rank_of(flavor)];
    try {
        switch (x.kind) {
            case GeneratorKind::hom_left:
                take(r, g, fuse_hom_left(g, need(x.hom, "hom", r.row), z));
                break;
            case GeneratorKind::hom_right:
                take(r, g, fuse_hom_right(g, z, need(x.hom, "hom", r.row)));
                break;
            case GeneratorKind::inv_corner_left: {
                const Corner& e = need(x.corner, "corner", r.row);
                check_setting(e, flavor);
                take(r, g, fuse_inv_corner_left(g, e, z));
                break;
            }
            case GeneratorKind::inv_corner_right: {
                const Corner& e = need(x.corner, "corner", r.row);
                check_setting(e, flavor);
                take(r, g, fuse_inv_corner_right(g, z, e));
                break;
            }
            case GeneratorKind::unitization_split:
                if (flavor == Flavor::general) throw Refusal(r.row, kNoFormula);
                take(r, fuse_unitization_split(g, z));
                break;
            case GeneratorKind::kappa_left:
                throw Refusal(r.row, kStub);
            case GeneratorKind::kappa_right: {
                if (flavor == Flavor::special) throw Refusal(r.row, kNotYet);
                if (flavor == Flavor::general) throw Refusal(r.row, kNoFormula);
                ProductRequest req;
                req.label = z.label + "." + need(x.kappa, "kappa", r.row).label;
                req.t = z;
                req.s = *x.kappa;
                req.phi_data = x.phi_data ? *x.phi_data : central_phi(g, req.s);
                req.unit = x.unit ? *x.unit : default_unit(z.j);
                ProductResult p = product_khom_ktheory(g, req);
                r.summands = {{1, p.x}};
                r.word = level_one_word(g, p.x);
                for (const auto& c : p.trace.certificates) r.certificates.push_back(c.report);
                r.trace = std::move(p.trace);
                break;
            }
            case GeneratorKind::split_left:
                if (flavor != Flavor::general) throw Refusal(r.row, kNoFormula);
                if (!x.witness) throw Refusal(r.row, row.cells[2]);
                take(r, fuse_split(g, need(x.seq, "sequence", r.row), *x.witness));
                break;
        }
    } catch (const Refusal& ex) {
        r.refused = true;
        r.condition = ex.condition();
        r.summands.clear();
        r.certificates.clear();
    }
    return r;
}

}  // namespace gk
