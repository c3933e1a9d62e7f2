#include "gk/io.hpp"

#include <json.hpp>

#include <atomic>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

namespace gk {

using json = nlohmann::ordered_json;

namespace {

const char* kInstanceSchema = "gkfuse-instance/1";
const char* kReportSchema = "gkfuse-report/1";

// ---------------------------------------------------------------- json access

struct Node {
    const json& j;
    std::string path;

    Node operator[](const std::string& key) const {
        if (!j.is_object()) throw InstanceError(path, "expected an object");
        auto it = j.find(key);
        if (it == j.end()) throw InstanceError(path, "missing field '" + key + "'");
        return {*it, path + "/" + key};
    }
    Node operator[](std::size_t k) const { return {j.at(k), path + "/" + std::to_string(k)}; }
    bool has(const std::string& key) const { return j.is_object() && j.contains(key); }
    std::size_t size() const {
        if (!j.is_array()) throw InstanceError(path, "expected an array");
        return j.size();
    }
    std::string str() const {
        if (!j.is_string()) throw InstanceError(path, "expected a string");
        return j.get<std::string>();
    }
    std::size_t index() const {
        if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long>() >= 0))
            throw InstanceError(path, "expected a non-negative integer");
        return j.get<std::size_t>();
    }
    long integer() const {
        if (!j.is_number_integer()) throw InstanceError(path, "expected an integer");
        return j.get<long>();
    }
    bool boolean() const {
        if (!j.is_boolean()) throw InstanceError(path, "expected true or false");
        return j.get<bool>();
    }
    template <class F>
    auto list(F&& f) const {
        std::vector<decltype(f((*this)[std::size_t{0}]))> out;
        for (std::size_t k = 0; k < size(); ++k) out.push_back(f((*this)[k]));
        return out;
    }
};

Scalar scalar_of(const Node& n) {
    if (n.j.is_number_integer()) return Scalar(n.j.get<long>());
    try {
        return Scalar::parse(n.str());
    } catch (const std::invalid_argument& ex) {
        throw InstanceError(n.path, ex.what());
    }
}

Vec vec_of(const Node& n) { return n.list(scalar_of); }

Mat mat_of(const Node& n, std::size_t rows, std::size_t cols) {
    if (n.size() != rows) throw InstanceError(n.path, "expected " + std::to_string(rows) + " rows");
    Mat m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        Vec row = vec_of(n[r]);
        if (row.size() != cols) throw InstanceError(n[r].path, "expected " + std::to_string(cols) + " columns");
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = row[c];
    }
    return m;
}

Mat square_of(const Node& n, std::size_t d) { return mat_of(n, d, d); }

json to_json(const Scalar& s) { return s.str(); }

json to_json(const Vec& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(to_json(x));
    return a;
}

json to_json(const Mat& m) {
    json a = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) a.push_back(to_json(m.row(r)));
    return a;
}

json to_json(const std::vector<Mat>& ms) {
    json a = json::array();
    for (const auto& m : ms) a.push_back(to_json(m));
    return a;
}

std::string line_col(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t k = 0; k < byte && k < text.size(); ++k) {
        if (text[k] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return std::to_string(line) + ":" + std::to_string(col);
}

// ------------------------------------------------------------------ equality

bool same_algebra(const Algebra& a, const Algebra& b) {
    if (a.label() != b.label() || a.dim() != b.dim() || a.unit() != b.unit()) return false;
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j)
            if (a.product(i, j) != b.product(i, j)) return false;
    return a.action() == b.action();
}

bool same_hom(const AlgebraHom& a, const AlgebraHom& b) {
    return a.label == b.label && a.source->label() == b.source->label() && a.target->label() == b.target->label() &&
           a.matrix == b.matrix;
}

// ---------------------------------------------------------------- semigroups

SemigroupG parse_semigroup(const Node& n) {
    if (n.has("builtin")) {
        std::string b = n["builtin"].str();
        if (b == "trivial") return SemigroupG::trivial();
        if (b == "klein4") return SemigroupG::klein4();
        if (b == "semilattice2") return SemigroupG::semilattice2();
        if (b.rfind("cyclic", 0) == 0) {
            try {
                return SemigroupG::cyclic(std::stoul(b.substr(6)));
            } catch (const std::exception&) {
            }
        }
        throw InstanceError(n["builtin"].path, "unknown builtin semigroup '" + b + "'");
    }
    std::vector<std::string> names = n["elements"].list([](const Node& e) { return e.str(); });
    auto idx = [&](const Node& e) {
        std::string s = e.str();
        for (std::size_t k = 0; k < names.size(); ++k)
            if (names[k] == s) return k;
        throw InstanceError(e.path, "unknown element '" + s + "'");
    };
    std::vector<std::vector<std::size_t>> mult = n["mult"].list([&](const Node& row) { return row.list(idx); });
    std::vector<std::size_t> star = n["star"].list(idx);
    std::size_t unit = idx(n["unit"]);
    try {
        SemigroupG g(names, mult, star, unit);
        if (std::string w = g.validate(); !w.empty()) throw InstanceError(n.path, w);
        return g;
    } catch (const std::invalid_argument& ex) {
        throw InstanceError(n.path, ex.what());
    }
}

json semigroup_json(const SemigroupG& g) {
    json j;
    j["elements"] = g.names();
    json mult = json::array();
    for (std::size_t a = 0; a < g.size(); ++a) {
        json row = json::array();
        for (std::size_t b = 0; b < g.size(); ++b) row.push_back(g.name(g.mul(a, b)));
        mult.push_back(row);
    }
    j["mult"] = mult;
    json star = json::array();
    for (std::size_t a = 0; a < g.size(); ++a) star.push_back(g.name(g.star(a)));
    j["star"] = star;
    j["unit"] = g.name(g.unit());
    return j;
}

// ------------------------------------------------------------------ algebras

json algebra_json(const Algebra& a) {
    json j;
    j["label"] = a.label();
    j["dim"] = a.dim();
    json sc = json::array();
    for (std::size_t x = 0; x < a.dim(); ++x)
        for (std::size_t y = 0; y < a.dim(); ++y)
            for (const auto& [k, c] : a.product(x, y)) sc.push_back(json::array({x, y, k, c.str()}));
    j["struct_consts"] = sc;
    if (a.unit()) j["unit"] = to_json(*a.unit());
    if (!a.has_trivial_action()) j["action"] = to_json(a.action());
    return j;
}

AlgPtr parse_algebra(const SemigroupG& g, const Node& n, const Registry<AlgPtr>& known) {
    std::string label = n["label"].str();
    AlgPtr a;
    try {
        if (n.has("builder")) {
            std::string b = n["builder"].str();
            if (b == "base_field") {
                a = base_field(g, label);
            } else if (b == "diagonal") {
                a = diagonal_algebra(n["n"].index(), label);
            } else if (b == "matrix" || b == "sum") {
                auto ref = [&](const Node& r) {
                    const AlgPtr* p = known.find(r.str());
                    if (!p) throw InstanceError(r.path, "unknown algebra '" + r.str() + "'");
                    return *p;
                };
                a = b == "matrix" ? matrix_algebra(n["n"].index(), ref(n["of"]), {}, label)
                                  : direct_sum(ref(n["of"][0]), ref(n["of"][1]), label);
            } else {
                throw InstanceError(n["builder"].path, "unknown builder '" + b + "'");
            }
        } else {
            std::size_t dim = n["dim"].index();
            std::vector<SparseVec> table(dim * dim);
            Node sc = n["struct_consts"];
            for (std::size_t k = 0; k < sc.size(); ++k) {
                Node t = sc[k];
                if (t.size() != 4) throw InstanceError(t.path, "expected [i, j, k, coefficient]");
                std::size_t x = t[0].index(), y = t[1].index(), z = t[2].index();
                if (x >= dim || y >= dim || z >= dim) throw InstanceError(t.path, "index out of range");
                Scalar c = scalar_of(t[3]);
                if (!c.is_zero()) table[x * dim + y].emplace_back(z, c);
            }
            for (auto& e : table) std::sort(e.begin(), e.end(), [](const auto& p, const auto& q) { return p.first < q.first; });
            std::optional<Vec> unit;
            if (n.has("unit")) unit = vec_of(n["unit"]);
            a = Algebra::from_sparse(label, dim, table, unit);
        }
        if (n.has("action")) {
            Node act = n["action"];
            if (act.size() != g.size()) throw InstanceError(act.path, "expected one matrix per semigroup element");
            a = a->with_action(act.list([&](const Node& m) { return square_of(m, a->dim()); }));
        }
    } catch (const std::invalid_argument& ex) {
        throw InstanceError(n.path, ex.what());
    }
    return a;
}

// ------------------------------------------------------------------- modules

json module_json(const FunctionalModule& m) {
    json j;
    j["label"] = m.label;
    j["algebra"] = m.algebra->label();
    j["dim"] = m.dim;
    j["right"] = to_json(m.right);
    if (!m.action.empty()) j["action"] = to_json(m.action);
    if (!m.theta.empty()) j["theta"] = to_json(m.theta);
    return j;
}

// ------------------------------------------------------------------- corners

json recipe_json(const std::string& label, const CornerRecipe& r) {
    json j;
    j["label"] = label;
    j["kind"] = r.kind;
    if (r.kind == "iso") j["hom"] = r.hom;
    if (r.kind == "canonical" || r.kind == "matrix") {
        j["algebra"] = r.algebra;
        j["n"] = r.n;
        j["position"] = r.position;
    }
    if (r.kind == "canonical" && !r.sigma.empty()) j["sigma"] = to_json(r.sigma);
    if (r.kind == "matrix") {
        json bl = json::array();
        for (const auto& b : r.blocks) bl.push_back(to_json(b));
        j["blocks"] = bl;
    }
    if (r.kind == "module") j["module"] = r.module;
    if (r.kind == "composite") j["factors"] = r.factors;
    return j;
}

Corner build_corner(const Instance& inst, const std::string& label, const CornerRecipe& r) {
    const SemigroupG& g = inst.g;
    if (r.kind == "iso") return iso_corner(g, inst.homs.at(r.hom));
    if (r.kind == "canonical")
        return canonical_matrix_corner(g, inst.algebras.at(r.algebra), r.n, r.sigma, label, r.position);
    if (r.kind == "matrix") {
        CornerAction ca;
        ca.n = r.n;
        ca.carrier = inst.algebras.at(r.algebra);
        ca.blocks = r.blocks;
        return matrix_corner(g, ca, label, r.position);
    }
    if (r.kind == "module") {
        Corner c = corner_embedding(g, inst.modules.at(r.module), label);
        return c;
    }
    if (r.kind == "composite") {
        if (r.factors.empty()) throw std::invalid_argument("composite corner without factors");
        Corner c = inst.corners.at(r.factors[0]);
        for (std::size_t k = 1; k < r.factors.size(); ++k) c = compose_corners(c, inst.corners.at(r.factors[k]));
        c.label = label;
        return c;
    }
    throw std::invalid_argument("unknown corner kind '" + r.kind + "'");
}

CornerRecipe parse_recipe(const SemigroupG& g, const Node& n, const Instance& inst) {
    CornerRecipe r;
    r.kind = n["kind"].str();
    auto need = [&](const Node& ref, bool ok, const char* what) {
        if (!ok) throw InstanceError(ref.path, std::string("unknown ") + what + " '" + ref.str() + "'");
        return ref.str();
    };
    if (r.kind == "iso") {
        r.hom = need(n["hom"], inst.homs.has(n["hom"].str()), "hom");
    } else if (r.kind == "canonical" || r.kind == "matrix") {
        r.algebra = need(n["algebra"], inst.algebras.has(n["algebra"].str()), "algebra");
        r.n = n["n"].index();
        r.position = n.has("position") ? n["position"].index() : 0;
        std::size_t nn = r.n * r.n;
        if (r.kind == "canonical" && n.has("sigma"))
            r.sigma = n["sigma"].list([&](const Node& m) { return square_of(m, nn); });
        if (r.kind == "matrix") {
            std::size_t d = inst.algebras.at(r.algebra)->dim();
            Node bl = n["blocks"];
            if (bl.size() != g.size()) throw InstanceError(bl.path, "expected blocks for every semigroup element");
            r.blocks = bl.list([&](const Node& per_g) {
                if (per_g.size() != nn) throw InstanceError(per_g.path, "expected n*n blocks");
                return per_g.list([&](const Node& m) { return square_of(m, d); });
            });
        }
    } else if (r.kind == "module") {
        r.module = need(n["module"], inst.modules.has(n["module"].str()), "module");
    } else if (r.kind == "composite") {
        Node f = n["factors"];
        for (std::size_t k = 0; k < f.size(); ++k)
            r.factors.push_back(need(f[k], inst.corners.has(f[k].str()), "corner"));
    } else {
        throw InstanceError(n["kind"].path, "unknown corner kind '" + r.kind + "'");
    }
    return r;
}

// --------------------------------------------------------------- L1 elements

json l1_json(const L1Element& z) {
    json j;
    j["label"] = z.label;
    j["b"] = z.b->label();
    j["j"] = z.j->label();
    j["x"] = z.x->label();
    j["a"] = z.a->label();
    j["exit"]["corner"] = z.exit.corner.label;
    if (z.exit.psi) j["exit"]["psi"] = z.exit.psi->label;
    j["iota"] = z.iota.label;
    j["s_minus"] = z.s_minus.label;
    j["s_plus"] = z.s_plus.label;
    json bl = json::array();
    for (const auto& b : z.m2.delta.blocks) bl.push_back(to_json(b));
    j["m2"]["blocks"] = bl;
    if (const auto& r = z.m2.realization) {
        json rj;
        rj["edim"] = r->edim;
        rj["s"] = to_json(r->s);
        rj["t"] = to_json(r->t);
        rj["rho"] = to_json(r->rho);
        j["m2"]["realization"] = rj;
    }
    return j;
}

json diagram_json(const std::string& label, const DiagramSpec& d) {
    json j;
    j["label"] = label;
    j["top"] = d.top;
    j["bottom"] = d.bottom;
    j["k"] = d.k;
    j["l"] = d.l;
    j["m"] = d.m;
    j["e"] = d.e;
    if (d.exit_map) j["exit_map"] = *d.exit_map;
    return j;
}

json word_json(const std::string& label, const WordSpec& w) {
    json j;
    j["label"] = label;
    j["source"] = w.source;
    j["target"] = w.target;
    json terms = json::array();
    for (const auto& [c, toks] : w.terms) {
        json t;
        t["coeff"] = c;
        json tj = json::array();
        for (const auto& tok : toks) tj.push_back(json{{tok.kind, tok.ref}});
        t["tokens"] = tj;
        terms.push_back(t);
    }
    j["terms"] = terms;
    return j;
}

json request_json(const RequestSpec& r) {
    json j;
    j["id"] = r.id;
    j["command"] = r.command;
    if (r.expect != "certified") j["expect"] = r.expect;
    if (r.command == "fuse") {
        j["z"] = r.z;
        j["flavor"] = to_string(r.flavor);
        json gj;
        gj["kind"] = to_string(r.kind);
        if (!r.hom.empty()) gj["hom"] = r.hom;
        if (!r.corner.empty()) gj["corner"] = r.corner;
        if (!r.kappa.empty()) gj["kappa"] = r.kappa;
        if (!r.seq.empty()) gj["seq"] = r.seq;
        if (!r.witness.empty()) gj["witness"] = r.witness;
        if (r.phi_data) gj["phi_data"] = to_json(*r.phi_data);
        if (r.unit) {
            gj["unit"] = json::array();
            for (const auto& v : *r.unit) gj["unit"].push_back(to_json(v));
        }
        j["generator"] = gj;
    } else if (r.command == "product") {
        if (!r.label.empty()) j["label"] = r.label;
        j["s"] = r.s;
        j["t"] = r.t;
        if (r.phi_data) j["phi_data"] = to_json(*r.phi_data);
        if (r.unit) {
            j["unit"] = json::array();
            for (const auto& v : *r.unit) j["unit"].push_back(to_json(v));
        }
    } else if (r.command == "normalize") {
        j["word"] = r.word;
        if (!r.facts.empty()) j["facts"] = r.facts;
        if (r.expect_zero) j["expect_zero"] = true;
    } else if (r.command == "validate") {
        j["target"] = r.target;
    }
    return j;
}

// ------------------------------------------------------------------ reports

json l1_report(const SemigroupG& g, const L1Element& z, bool trace) {
    json j;
    j["label"] = z.label;
    for (const auto& [k, a] : {std::pair{"B", z.b}, {"J", z.j}, {"X", z.x}, {"A", z.a}})
        j["objects"][k] = json{{"label", a->label()}, {"dim", a->dim()}};
    const Corner& e = z.exit.corner;
    j["exit"] = json{{"corner", e.label}, {"kind", to_string(e.kind)}, {"class", corner_class_name(e.cls)}, {"n", e.n}};
    j["exit"]["e"] = to_json(e.hom.matrix);
    if (z.exit.psi) j["exit"]["psi"] = to_json(z.exit.psi->matrix);
    j["iota"] = to_json(z.iota.matrix);
    j["s_minus"] = to_json(z.s_minus.matrix);
    j["s_plus"] = to_json(z.s_plus.matrix);
    j["zero_element"] = is_zero_element(z);
    L1Report v = validate_l1(g, z);
    j["valid"] = v.ok;
    if (!v.ok) j["invalid"] = v.condition + ": " + v.witness;
    if (v.f) j["f"] = to_json(v.f->matrix);
    try {
        SpecialityResult c = classify_m2(g, z);
        j["m2"]["class"] = to_string(c.cls);
        j["m2"]["route"] = c.route;
        if (c.cls == Speciality::neither) j["m2"]["witness"] = c.witness;
    } catch (const Undetermined& ex) {
        j["m2"]["class"] = "undetermined";
        j["m2"]["witness"] = ex.what();
    }
    if (trace) {
        json bl = json::array();
        for (const auto& b : z.m2.delta.blocks) bl.push_back(to_json(b));
        j["m2"]["blocks"] = bl;
        j["x_algebra"] = algebra_json(*z.x);
    }
    return j;
}

json report_json(const CheckReport& r) {
    json j;
    j["ok"] = r.ok;
    if (!r.ok) {
        j["condition"] = r.condition;
        j["witness"] = r.witness;
    }
    return j;
}

json derivation_json(const Derivation& d) {
    json a = json::array();
    for (const auto& s : d.steps)
        a.push_back(json{{"rule", s.rule}, {"term", s.term}, {"position", s.position}, {"before", s.before},
                         {"after", s.after}});
    return a;
}

struct Outcome {
    json body;
    std::string status;  // certified | refused | failed | error | valid | invalid
};

Outcome run_fuse(const Instance& inst, const RequestSpec& r, bool trace) {
    Outcome o;
    const L1Element& z = inst.l1.at(r.z);
    DispatchResult d = dispatch(inst.g, inst.generator(r), z, r.flavor);
    o.body["row"] = d.row;
    o.body["flavor"] = to_string(d.flavor);
    o.body["cell"] = d.cell;
    if (d.refused) {
        o.status = "refused";
        o.body["condition"] = d.condition;
        return o;
    }
    bool ok = d.converse;
    json certs = json::array();
    for (const auto& c : d.certificates) {
        certs.push_back(report_json(c));
        ok = ok && c.ok;
    }
    json outs = json::array();
    for (const auto& [coeff, el] : d.summands) {
        json oj = l1_report(inst.g, el, trace);
        ok = ok && oj["valid"].get<bool>();
        outs.push_back(json{{"coeff", coeff}, {"element", oj}});
    }
    o.body["outputs"] = outs;
    o.body["word"] = d.word.str();
    o.body["certificates"] = certs;
    o.body["converse"] = d.converse;
    if (d.trace) {
        o.body["pipeline_ok"] = d.trace->ok();
        ok = ok && d.trace->ok();
    }
    if (trace) o.body["log"] = derivation_json(d.log);
    o.status = ok ? "certified" : "failed";
    return o;
}

json trace_json(const PipelineTrace& t, bool trace) {
    json j;
    j["n"] = t.n;
    j["s_very_special"] = t.s_very_special;
    json lines = json::array();
    for (std::size_t k = 0; k < t.lines.size(); ++k) {
        const L1Element& l = t.lines[k];
        lines.push_back(json{{"line", k + 1}, {"label", l.label}, {"X", l.x->label()}, {"dim_X", l.x->dim()},
                             {"A", l.a->label()}, {"dim_A", l.a->dim()}});
    }
    j["lines"] = lines;
    json certs = json::array();
    for (const auto& c : t.certificates) {
        json cj = report_json(c.report);
        cj["step"] = c.step;
        cj["label"] = c.diagram.label;
        certs.push_back(cj);
    }
    j["certificates"] = certs;
    j["dim_xbold"] = t.xbold.algebra ? t.xbold.algebra->dim() : 0;
    j["stabilization_index"] = t.stabilization_index;
    j["theta_bar"] = json{{"minus_ok", t.theta_bar_minus.ok()}, {"plus_ok", t.theta_bar_plus.ok()}};
    j["split_step_ok"] = t.split_step_ok;
    j["exit_rotation_ok"] = t.exit_rotation_ok;
    j["closed_form_ok"] = t.closed_form_ok;
    if (!t.closed_form_witness.empty()) j["closed_form_witness"] = t.closed_form_witness;
    j["output_class"] = to_string(t.output_class);
    if (trace) {
        j["S_minus"] = to_json(t.S_minus.matrix);
        j["S_plus"] = to_json(t.S_plus.matrix);
        j["theta"] = to_json(t.theta);
        j["T_minus"] = to_json(t.T_minus);
        j["split_step"] = derivation_json(t.split_step);
        j["exit_rotation"] = derivation_json(t.exit_rotation);
    }
    return j;
}

Outcome run_product(const Instance& inst, const RequestSpec& r, bool trace) {
    Outcome o;
    try {
        ProductResult p = product_khom_ktheory(inst.g, inst.product_request(r));
        o.body["output"] = l1_report(inst.g, p.x, trace);
        o.body["trace"] = trace_json(p.trace, trace);
        o.status = p.trace.ok() && o.body["output"]["valid"].get<bool>() ? "certified" : "failed";
    } catch (const Refusal& ex) {
        o.body["row"] = ex.row();
        o.body["condition"] = ex.condition();
        o.status = "refused";
    }
    return o;
}

Outcome run_normalize(const Instance& inst, const RequestSpec& r, bool trace) {
    Outcome o;
    FactStore facts;
    bool ok = true;
    json fj = json::array();
    for (const auto& label : r.facts) {
        DiagramReport rep = check_diagram(inst.g, inst.diagram(label));
        json e = report_json(rep);
        e["label"] = label;
        fj.push_back(e);
        if (rep.ok && rep.fact) facts.add(*rep.fact);
        ok = ok && rep.ok;
    }
    MorphismWord w = inst.word(r.word);
    Derivation log;
    NormalizeOptions opts;
    opts.facts = &facts;
    MorphismWord nf = normalize(w, opts, &log);
    o.body["word"] = w.str();
    o.body["facts"] = fj;
    o.body["normal_form"] = nf.str();
    o.body["is_zero"] = nf.is_zero();
    o.body["steps"] = log.steps.size();
    if (trace) o.body["log"] = derivation_json(log);
    if (r.expect_zero && !nf.is_zero()) ok = false;
    o.status = ok ? "certified" : "failed";
    return o;
}

Outcome run_one(const Instance& inst, const RequestSpec& r, bool trace) {
    try {
        if (r.command == "fuse") return run_fuse(inst, r, trace);
        if (r.command == "product") return run_product(inst, r, trace);
        if (r.command == "normalize") return run_normalize(inst, r, trace);
        throw std::invalid_argument("command '" + r.command + "' has no runner");
    } catch (const CertificateFailure& ex) {
        Outcome o;
        o.status = "failed";
        o.body["error"] = ex.what();
        return o;
    } catch (const std::exception& ex) {
        Outcome o;
        o.status = "error";
        o.body["error"] = ex.what();
        return o;
    }
}

template <class F>
void for_each_parallel(std::size_t count, unsigned jobs, F&& f) {
    if (jobs <= 1 || count <= 1) {
        for (std::size_t k = 0; k < count; ++k) f(k);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < std::min<std::size_t>(jobs, count); ++w)
        pool.emplace_back([&] {
            for (std::size_t k = next++; k < count; k = next++) f(k);
        });
    for (auto& t : pool) t.join();
}

json validate_objects(const Instance& inst, std::size_t& failures) {
    const SemigroupG& g = inst.g;
    json out = json::array();
    std::map<std::string, std::string> expected;
    for (const auto& r : inst.requests)
        if (r.command == "validate") expected[r.target] = r.expect;
    auto push = [&](const char* kind, const std::string& label, bool ok, const std::string& why) {
        json e{{"kind", kind}, {"label", label}, {"ok", ok}};
        if (!ok) e["witness"] = why;
        auto it = expected.find(label);
        std::string want = it == expected.end() ? "valid" : it->second;
        if (it != expected.end()) e["expect"] = want;
        if ((want == "invalid") == ok) ++failures;
        out.push_back(e);
    };
    for (const auto& [l, a] : inst.algebras.items()) {
        AlgebraReport r = check_algebra(*a);
        std::string why = r.witness;
        if (!r.quadratik) why = "not quadratik: " + why;
        bool ok = r.ok();
        if (ok && !a->has_trivial_action()) {
            ActionReport ar = check_action(g, *a);
            ok = ar.ok;
            why = ar.witness;
        }
        push("algebra", l, ok, why);
    }
    for (const auto& [l, h] : inst.homs.items()) {
        HomReport r = check_hom(g, h);
        push("hom", l, r.ok(), r.witness);
    }
    for (const auto& [l, m] : inst.modules.items()) {
        ModuleReport r = check_module(g, m);
        push("module", l, r.ok, r.witness);
    }
    for (const auto& [l, c] : inst.corners.items()) {
        ModuleReport r = check_corner(g, c);
        push("corner", l, r.ok, r.witness);
    }
    for (const auto& [l, s] : inst.sequences.items()) {
        CheckReport r = validate_split(g, s);
        push("sequence", l, r.ok, r.condition + ": " + r.witness);
    }
    for (const auto& [l, z] : inst.l1.items()) {
        L1Report r = validate_l1(g, z);
        push("l1_element", l, r.ok, r.condition + ": " + r.witness);
    }
    for (const auto& [l, d] : inst.diagrams.items()) {
        DiagramReport r = check_diagram(g, inst.diagram(l));
        push("diagram", l, r.ok, r.condition + ": " + r.witness);
    }
    return out;
}

void check_ref(const Node& n, bool ok, const char* what) {
    if (!ok) throw InstanceError(n.path, std::string("unknown ") + what + " '" + n.str() + "'");
}

}  // namespace

std::string scalar_text(const Scalar& s) { return s.str(); }

// ------------------------------------------------------- programmatic builders

void Instance::add_algebra(const AlgPtr& a) {
    if (const AlgPtr* p = algebras.find(a->label())) {
        if (!same_algebra(**p, *a)) throw InstanceError("/algebras", "label '" + a->label() + "' names two algebras");
        return;
    }
    algebras.add(a->label(), a);
}

void Instance::add_hom(const AlgebraHom& h) {
    if (h.label.empty()) throw InstanceError("/homs", "hom without a label");
    add_algebra(h.source);
    add_algebra(h.target);
    if (const AlgebraHom* p = homs.find(h.label)) {
        if (!same_hom(*p, h)) throw InstanceError("/homs", "label '" + h.label + "' names two homs");
        return;
    }
    homs.add(h.label, h);
}

void Instance::add_module(const FunctionalModule& m) {
    add_algebra(m.algebra);
    if (!modules.add(m.label, m) && modules.at(m.label).right != m.right)
        throw InstanceError("/modules", "label '" + m.label + "' names two modules");
}

const Corner& Instance::add_corner(const std::string& label, CornerRecipe r) {
    if (corners.has(label)) return corners.at(label);
    Corner c = build_corner(*this, label, r);
    add_algebra(c.source());
    add_algebra(c.target());
    corner_recipes.add(label, std::move(r));
    corners.add(label, std::move(c));
    return corners.at(label);
}

const Corner& Instance::add_corner(const Corner& c) {
    if (const Corner* p = corners.find(c.label)) {
        if (p->hom.matrix != c.hom.matrix || !same_algebra(*p->target(), *c.target()))
            throw InstanceError("/corners", "label '" + c.label + "' names two corners");
        return *p;
    }
    CornerRecipe r;
    switch (c.kind) {
        case CornerKind::iso:
            add_hom(c.hom);
            r.kind = "iso";
            r.hom = c.hom.label;
            break;
        case CornerKind::canonical_matrix: {
            add_algebra(c.source());
            r.kind = "matrix";
            r.algebra = c.source()->label();
            r.n = c.n;
            r.position = c.position;
            CornerAction ca = c.target()->has_trivial_action()
                                  ? CornerAction::trivial(c.n, c.source(), g.size())
                                  : CornerAction::from_full(c.n, c.source(), c.target()->action());
            r.blocks = ca.blocks;
            break;
        }
        case CornerKind::composite:
            r.kind = "composite";
            for (const auto& f : c.factors) r.factors.push_back(add_corner(f).label);
            break;
        case CornerKind::module:
            throw InstanceError("/corners", "module corner '" + c.label + "' needs an explicit recipe");
    }
    return add_corner(c.label, std::move(r));
}

void Instance::add_sequence(const SplitExactSeq& s) {
    add_hom(s.iota);
    add_hom(s.s);
    sequences.add(s.label, s);
}

void Instance::add_l1(const L1Element& z) {
    for (const AlgPtr& a : {z.b, z.j, z.x, z.a}) add_algebra(a);
    add_corner(z.exit.corner);
    if (z.exit.psi) add_hom(*z.exit.psi);
    for (const AlgebraHom* h : {&z.iota, &z.s_minus, &z.s_plus}) add_hom(*h);
    if (!l1.add(z.label, z)) throw InstanceError("/l1_elements", "label '" + z.label + "' is taken");
}

void Instance::add_diagram(const std::string& label, const DiagramCertificate& d) {
    for (const L1Element* z : {&d.top, &d.bottom})
        if (!l1.has(z->label)) add_l1(*z);
    for (const AlgebraHom* h : {&d.k, &d.l, &d.m, &d.e}) add_hom(*h);
    DiagramSpec s{d.top.label, d.bottom.label, d.k.label, d.l.label, d.m.label, d.e.label, std::nullopt};
    if (d.exit_map) {
        add_hom(*d.exit_map);
        s.exit_map = d.exit_map->label;
    }
    diagrams.add(label, s);
}

void Instance::add_word(const std::string& label, const MorphismWord& w) {
    WordSpec s;
    s.source = w.source->label();
    s.target = w.target->label();
    add_algebra(w.source);
    add_algebra(w.target);
    for (const Term& t : w.terms) {
        std::vector<WordSpec::TokenRef> refs;
        for (const Token& tok : t.tokens) {
            switch (tok.kind) {
                case TokenKind::hom:
                    add_hom(tok.hom);
                    refs.push_back({"hom", tok.hom.label});
                    break;
                case TokenKind::inv_corner:
                    refs.push_back({"inv", add_corner(*tok.corner).label});
                    break;
                case TokenKind::split:
                    if (!sequences.has(tok.split->label)) add_sequence(*tok.split);
                    refs.push_back({"delta", tok.split->label});
                    break;
            }
        }
        s.terms.emplace_back(t.coeff, std::move(refs));
    }
    words.add(label, std::move(s));
}

DiagramCertificate Instance::diagram(const std::string& label) const {
    const DiagramSpec& d = diagrams.at(label);
    DiagramCertificate c{label, l1.at(d.top), l1.at(d.bottom), homs.at(d.k), homs.at(d.l), homs.at(d.m),
                         homs.at(d.e), std::nullopt};
    if (d.exit_map) c.exit_map = homs.at(*d.exit_map);
    return c;
}

MorphismWord Instance::word(const std::string& label) const {
    const WordSpec& s = words.at(label);
    MorphismWord w = MorphismWord::zero(algebras.at(s.source), algebras.at(s.target));
    for (const auto& [coeff, refs] : s.terms) {
        std::vector<Token> toks;
        for (const auto& r : refs) {
            if (r.kind == "hom") toks.push_back(Token::of(homs.at(r.ref)));
            else if (r.kind == "inv") toks.push_back(Token::inv(corners.at(r.ref)));
            else toks.push_back(Token::delta(sequences.at(r.ref)));
        }
        MorphismWord t = toks.empty() ? MorphismWord::identity(w.source) : MorphismWord::of(std::move(toks));
        for (Term& term : t.terms) term.coeff *= coeff;
        w = w + t;
    }
    return w;
}

Generator Instance::generator(const RequestSpec& r) const {
    Generator x;
    x.kind = r.kind;
    if (!r.hom.empty()) x.hom = homs.at(r.hom);
    if (!r.corner.empty()) x.corner = corners.at(r.corner);
    if (!r.kappa.empty()) x.kappa = l1.at(r.kappa);
    if (!r.seq.empty()) x.seq = sequences.at(r.seq);
    if (!r.witness.empty()) x.witness = diagram(r.witness);
    if (r.phi_data && x.kappa) {
        OperatorHom p = central_phi(g, *x.kappa);
        p.images = *r.phi_data;
        x.phi_data = p;
    }
    if (r.unit) x.unit = ApproxUnit{l1.at(r.z).j, *r.unit};
    return x;
}

ProductRequest Instance::product_request(const RequestSpec& r) const {
    ProductRequest p;
    p.label = r.label.empty() ? r.id : r.label;
    p.s = l1.at(r.s);
    p.t = l1.at(r.t);
    OperatorHom phi;
    phi.source = p.s.a;
    phi.vdim = p.s.x->dim();
    for (std::size_t k = 0; k < g.size(); ++k) phi.v_action.push_back(p.s.m2.gamma_minus(k));
    phi.images = r.phi_data ? *r.phi_data : central_phi(g, p.s).images;
    p.phi_data = phi;
    const AlgPtr& k = p.t.j;
    if (r.unit) {
        p.unit = ApproxUnit{k, *r.unit};
    } else {
        if (!k->unit()) throw std::invalid_argument("product: " + k->label() + " has no unit; give an approximate unit");
        p.unit = ApproxUnit{k, {*k->unit()}};
    }
    return p;
}

// ------------------------------------------------------------------ parsing

namespace {

RequestSpec parse_request(const Node& n, const Instance& inst) {
    RequestSpec r;
    r.id = n["id"].str();
    r.command = n["command"].str();
    if (n.has("expect")) r.expect = n["expect"].str();
    auto ref = [&](const Node& x, const auto& reg, const char* what) {
        check_ref(x, reg.has(x.str()), what);
        return x.str();
    };
    auto chain = [&](const Node& x) { return x.list(vec_of); };
    if (r.command == "fuse") {
        r.z = ref(n["z"], inst.l1, "L1 element");
        try {
            r.flavor = parse_flavor(n["flavor"].str());
        } catch (const std::invalid_argument& ex) {
            throw InstanceError(n["flavor"].path, ex.what());
        }
        Node gn = n["generator"];
        try {
            r.kind = parse_generator_kind(gn["kind"].str());
        } catch (const std::invalid_argument& ex) {
            throw InstanceError(gn["kind"].path, ex.what());
        }
        if (gn.has("hom")) r.hom = ref(gn["hom"], inst.homs, "hom");
        if (gn.has("corner")) r.corner = ref(gn["corner"], inst.corners, "corner");
        if (gn.has("kappa")) r.kappa = ref(gn["kappa"], inst.l1, "L1 element");
        if (gn.has("seq")) r.seq = ref(gn["seq"], inst.sequences, "sequence");
        if (gn.has("witness")) r.witness = ref(gn["witness"], inst.diagrams, "diagram");
        if (gn.has("phi_data")) {
            if (r.kappa.empty()) throw InstanceError(gn["phi_data"].path, "phi_data needs kappa");
            std::size_t d = inst.l1.at(r.kappa).x->dim();
            r.phi_data = gn["phi_data"].list([&](const Node& m) { return square_of(m, d); });
        }
        if (gn.has("unit")) r.unit = chain(gn["unit"]);
    } else if (r.command == "product") {
        if (n.has("label")) r.label = n["label"].str();
        r.s = ref(n["s"], inst.l1, "L1 element");
        r.t = ref(n["t"], inst.l1, "L1 element");
        if (n.has("phi_data")) {
            std::size_t d = inst.l1.at(r.s).x->dim();
            r.phi_data = n["phi_data"].list([&](const Node& m) { return square_of(m, d); });
        }
        if (n.has("unit")) r.unit = chain(n["unit"]);
    } else if (r.command == "normalize") {
        r.word = ref(n["word"], inst.words, "word");
        if (n.has("facts")) {
            Node f = n["facts"];
            for (std::size_t k = 0; k < f.size(); ++k) r.facts.push_back(ref(f[k], inst.diagrams, "diagram"));
        }
        if (n.has("expect_zero")) r.expect_zero = n["expect_zero"].boolean();
    } else if (r.command == "validate") {
        r.target = n["target"].str();
    } else {
        throw InstanceError(n["command"].path, "unknown command '" + r.command + "'");
    }
    static const std::vector<std::string> kExpect = {"certified", "refused", "failed", "valid", "invalid"};
    if (std::find(kExpect.begin(), kExpect.end(), r.expect) == kExpect.end())
        throw InstanceError(n["expect"].path, "unknown expectation '" + r.expect + "'");
    return r;
}

template <class F>
void each(const Node& root, const char* key, F&& f) {
    if (!root.has(key)) return;
    Node arr = root[key];
    for (std::size_t k = 0; k < arr.size(); ++k) {
        Node item = arr[k];
        try {
            f(item);
        } catch (const InstanceError&) {
            throw;
        } catch (const std::exception& ex) {
            throw InstanceError(item.path, ex.what());
        }
    }
}

}  // namespace

Instance parse_instance(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& ex) {
        throw InstanceError(line_col(text, ex.byte == 0 ? 0 : ex.byte - 1), "syntax error");
    }
    Node root{doc, ""};
    if (!doc.is_object()) throw InstanceError("/", "expected an object");
    if (!root.has("schema") || root["schema"].str() != kInstanceSchema)
        throw InstanceError("/schema", std::string("expected \"") + kInstanceSchema + "\"");

    Instance inst;
    if (root.has("semigroup")) inst.g = parse_semigroup(root["semigroup"]);
    const SemigroupG& g = inst.g;

    auto dup = [](const Node& n, const std::string& label) {
        throw InstanceError(n.path, "duplicate label '" + label + "'");
    };
    each(root, "algebras", [&](const Node& n) {
        AlgPtr a = parse_algebra(g, n, inst.algebras);
        if (!inst.algebras.add(a->label(), a)) dup(n, a->label());
    });
    auto alg = [&](const Node& n) {
        check_ref(n, inst.algebras.has(n.str()), "algebra");
        return inst.algebras.at(n.str());
    };
    auto hom = [&](const Node& n) {
        check_ref(n, inst.homs.has(n.str()), "hom");
        return inst.homs.at(n.str());
    };
    each(root, "homs", [&](const Node& n) {
        AlgPtr s = alg(n["source"]), t = alg(n["target"]);
        AlgebraHom h(s, t, mat_of(n["matrix"], t->dim(), s->dim()), n["label"].str());
        if (!inst.homs.add(h.label, h)) dup(n, h.label);
    });
    each(root, "modules", [&](const Node& n) {
        FunctionalModule m;
        m.label = n["label"].str();
        m.algebra = alg(n["algebra"]);
        m.dim = n["dim"].index();
        m.right = n["right"].list([&](const Node& x) { return square_of(x, m.dim); });
        if (m.right.size() != m.algebra->dim()) throw InstanceError(n["right"].path, "expected one matrix per basis element");
        if (n.has("action")) m.action = n["action"].list([&](const Node& x) { return square_of(x, m.dim); });
        if (n.has("theta")) m.theta = n["theta"].list([&](const Node& x) { return mat_of(x, m.algebra->dim(), m.dim); });
        if (!inst.modules.add(m.label, m)) dup(n, m.label);
    });
    each(root, "corners", [&](const Node& n) {
        std::string label = n["label"].str();
        if (inst.corners.has(label)) dup(n, label);
        CornerRecipe r = parse_recipe(g, n, inst);
        Corner c = build_corner(inst, label, r);
        if (const AlgPtr* t = inst.algebras.find(c.target()->label()); t && (*t)->dim() != c.target()->dim())
            throw InstanceError(n.path, "corner target clashes with algebra '" + c.target()->label() + "'");
        inst.corner_recipes.add(label, r);
        inst.corners.add(label, c);
    });
    each(root, "sequences", [&](const Node& n) {
        SplitExactSeq s = make_split(n["label"].str(), hom(n["iota"]), hom(n["s"]));
        if (!inst.sequences.add(s.label, s)) dup(n, s.label);
    });
    each(root, "l1_elements", [&](const Node& n) {
        L1Element z;
        z.label = n["label"].str();
        z.b = alg(n["b"]);
        z.j = alg(n["j"]);
        z.x = alg(n["x"]);
        z.a = alg(n["a"]);
        Node ex = n["exit"];
        check_ref(ex["corner"], inst.corners.has(ex["corner"].str()), "corner");
        z.exit.corner = inst.corners.at(ex["corner"].str());
        if (ex.has("psi")) z.exit.psi = hom(ex["psi"]);
        z.iota = hom(n["iota"]);
        z.s_minus = hom(n["s_minus"]);
        z.s_plus = hom(n["s_plus"]);
        Node m2 = n["m2"];
        CornerAction ca;
        ca.n = 2;
        ca.carrier = z.x;
        Node bl = m2["blocks"];
        if (bl.size() != g.size()) throw InstanceError(bl.path, "expected blocks for every semigroup element");
        ca.blocks = bl.list([&](const Node& per_g) {
            if (per_g.size() != 4) throw InstanceError(per_g.path, "expected four blocks");
            return per_g.list([&](const Node& m) { return square_of(m, z.x->dim()); });
        });
        z.m2 = M2Space{ca, std::nullopt};
        if (m2.has("realization")) {
            Node rn = m2["realization"];
            Realization r;
            r.edim = rn["edim"].index();
            r.s = rn["s"].list([&](const Node& m) { return square_of(m, r.edim); });
            r.t = rn["t"].list([&](const Node& m) { return square_of(m, r.edim); });
            r.rho = mat_of(rn["rho"], r.edim * r.edim, z.x->dim());
            z.m2.realization = r;
        }
        if (!inst.l1.add(z.label, z)) dup(n, z.label);
    });
    each(root, "diagrams", [&](const Node& n) {
        DiagramSpec d;
        auto l1ref = [&](const Node& x) {
            check_ref(x, inst.l1.has(x.str()), "L1 element");
            return x.str();
        };
        d.top = l1ref(n["top"]);
        d.bottom = l1ref(n["bottom"]);
        d.k = hom(n["k"]).label;
        d.l = hom(n["l"]).label;
        d.m = hom(n["m"]).label;
        d.e = hom(n["e"]).label;
        if (n.has("exit_map")) d.exit_map = hom(n["exit_map"]).label;
        std::string label = n["label"].str();
        if (!inst.diagrams.add(label, d)) dup(n, label);
    });
    each(root, "words", [&](const Node& n) {
        WordSpec w;
        w.source = alg(n["source"])->label();
        w.target = alg(n["target"])->label();
        Node terms = n["terms"];
        for (std::size_t k = 0; k < terms.size(); ++k) {
            Node t = terms[k];
            std::vector<WordSpec::TokenRef> refs;
            Node toks = t["tokens"];
            for (std::size_t q = 0; q < toks.size(); ++q) {
                Node tok = toks[q];
                if (tok.has("hom")) {
                    refs.push_back({"hom", hom(tok["hom"]).label});
                } else if (tok.has("inv")) {
                    check_ref(tok["inv"], inst.corners.has(tok["inv"].str()), "corner");
                    refs.push_back({"inv", tok["inv"].str()});
                } else if (tok.has("delta")) {
                    check_ref(tok["delta"], inst.sequences.has(tok["delta"].str()), "sequence");
                    refs.push_back({"delta", tok["delta"].str()});
                } else {
                    throw InstanceError(tok.path, "expected hom, inv or delta");
                }
            }
            w.terms.emplace_back(t.has("coeff") ? t["coeff"].integer() : 1, std::move(refs));
        }
        std::string label = n["label"].str();
        if (!inst.words.add(label, w)) dup(n, label);
        inst.word(label).check();
    });
    std::map<std::string, bool> ids;
    each(root, "requests", [&](const Node& n) {
        RequestSpec r = parse_request(n, inst);
        if (ids[r.id]) throw InstanceError(n.path, "duplicate request id '" + r.id + "'");
        ids[r.id] = true;
        inst.requests.push_back(std::move(r));
    });
    return inst;
}

Instance load_instance(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InstanceError(path, "cannot open file");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_instance(ss.str());
}

std::string serialize_instance(const Instance& inst) {
    json j;
    j["schema"] = kInstanceSchema;
    j["semigroup"] = semigroup_json(inst.g);
    // Algebras first; corner targets are rebuilt by their corners but stay
    // listed so that homs into them resolve.
    j["algebras"] = json::array();
    for (const auto& [l, a] : inst.algebras.items()) j["algebras"].push_back(algebra_json(*a));
    j["homs"] = json::array();
    for (const auto& [l, h] : inst.homs.items())
        j["homs"].push_back(json{{"label", l}, {"source", h.source->label()}, {"target", h.target->label()},
                                 {"matrix", to_json(h.matrix)}});
    j["modules"] = json::array();
    for (const auto& [l, m] : inst.modules.items()) j["modules"].push_back(module_json(m));
    j["corners"] = json::array();
    for (const auto& [l, r] : inst.corner_recipes.items()) j["corners"].push_back(recipe_json(l, r));
    j["sequences"] = json::array();
    for (const auto& [l, s] : inst.sequences.items())
        j["sequences"].push_back(json{{"label", l}, {"iota", s.iota.label}, {"s", s.s.label}});
    j["l1_elements"] = json::array();
    for (const auto& [l, z] : inst.l1.items()) j["l1_elements"].push_back(l1_json(z));
    j["diagrams"] = json::array();
    for (const auto& [l, d] : inst.diagrams.items()) j["diagrams"].push_back(diagram_json(l, d));
    j["words"] = json::array();
    for (const auto& [l, w] : inst.words.items()) j["words"].push_back(word_json(l, w));
    j["requests"] = json::array();
    for (const auto& r : inst.requests) j["requests"].push_back(request_json(r));
    return j.dump(2) + "\n";
}

RunResult run(const Instance& inst, const std::string& command, const RunOptions& opts) {
    json rep;
    rep["schema"] = kReportSchema;
    rep["instance"] = opts.instance_name;
    rep["command"] = command;
    std::size_t unexpected = 0;

    if (command == "validate") {
        rep["objects"] = validate_objects(inst, unexpected);
        rep["summary"] = json{{"objects", rep["objects"].size()}, {"unexpected", unexpected}};
        return {rep.dump(2) + "\n", unexpected == 0 ? 0 : 1};
    }
    if (command != "fuse" && command != "product" && command != "normalize")
        throw InstanceError("command", "unknown command '" + command + "'");

    std::vector<const RequestSpec*> todo;
    for (const auto& id : opts.ids) {
        auto it = std::find_if(inst.requests.begin(), inst.requests.end(), [&](const auto& r) { return r.id == id; });
        if (it == inst.requests.end()) throw InstanceError("/requests", "no request '" + id + "'");
        if (it->command != command)
            throw InstanceError("/requests", "request '" + id + "' is a " + it->command + " request");
        todo.push_back(&*it);
    }
    if (opts.ids.empty())
        for (const auto& r : inst.requests)
            if (r.command == command) todo.push_back(&r);

    std::vector<Outcome> outcomes(todo.size());
    for_each_parallel(todo.size(), opts.jobs, [&](std::size_t k) { outcomes[k] = run_one(inst, *todo[k], opts.trace); });

    json results = json::array();
    std::map<std::string, std::size_t> counts;
    for (std::size_t k = 0; k < todo.size(); ++k) {
        json r;
        r["id"] = todo[k]->id;
        r["expect"] = todo[k]->expect;
        r["status"] = outcomes[k].status;
        for (auto& [key, v] : outcomes[k].body.items()) r[key] = v;
        ++counts[outcomes[k].status];
        if (outcomes[k].status != todo[k]->expect) ++unexpected;
        results.push_back(r);
    }
    rep["results"] = results;
    json summary;
    summary["requests"] = todo.size();
    for (const auto& [k, v] : counts) summary[k] = v;
    summary["unexpected"] = unexpected;
    rep["summary"] = summary;
    return {rep.dump(2) + "\n", unexpected == 0 ? 0 : 1};
}

}  // namespace gk
