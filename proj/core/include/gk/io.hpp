#pragma once

#include "gk/dispatch.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gk {

// Malformed input or an unresolved reference. `where` is "line:column" for
// syntax errors and a JSON pointer otherwise.
class InstanceError : public std::runtime_error {
public:
    InstanceError(std::string where, const std::string& what)
        : std::runtime_error(where + ": " + what), where_(std::move(where)) {}
    const std::string& where() const { return where_; }

private:
    std::string where_;
};

// Labelled objects in insertion order.
template <class T>
class Registry {
public:
    bool has(const std::string& label) const { return index_.count(label) != 0; }
    const T& at(const std::string& label) const { return items_.at(index_.at(label)).second; }
    const T* find(const std::string& label) const {
        auto it = index_.find(label);
        return it == index_.end() ? nullptr : &items_[it->second].second;
    }
    // Returns false when the label is already taken.
    bool add(const std::string& label, T value) {
        if (has(label)) return false;
        index_.emplace(label, items_.size());
        items_.emplace_back(label, std::move(value));
        return true;
    }
    const std::vector<std::pair<std::string, T>>& items() const { return items_; }
    std::size_t size() const { return items_.size(); }

private:
    std::vector<std::pair<std::string, T>> items_;
    std::map<std::string, std::size_t> index_;
};

// How a corner was built; serialized instead of the corner itself.
struct CornerRecipe {
    std::string kind;  // iso | canonical | matrix | module | composite
    std::string hom;                        // iso
    std::string algebra;                    // canonical, matrix: the source
    std::size_t n = 1;
    std::size_t position = 0;
    std::vector<Mat> sigma;                 // canonical
    std::vector<std::vector<Mat>> blocks;   // matrix: [g][i*n+j]
    std::string module;                     // module
    std::vector<std::string> factors;       // composite, first to last
};

struct DiagramSpec {
    std::string top, bottom, k, l, m, e;
    std::optional<std::string> exit_map;
};

struct WordSpec {
    std::string source, target;
    struct TokenRef {
        std::string kind;  // hom | inv | delta
        std::string ref;
    };
    std::vector<std::pair<long, std::vector<TokenRef>>> terms;
};

struct RequestSpec {
    std::string id;
    std::string command;  // validate | fuse | product | normalize
    std::string expect = "certified";  // or "refused"

    // fuse
    std::string z;
    Flavor flavor = Flavor::very_special;
    GeneratorKind kind = GeneratorKind::hom_left;
    std::string hom, corner, kappa, seq, witness;
    std::optional<std::vector<Mat>> phi_data;
    std::optional<std::vector<Vec>> unit;

    // product
    std::string s, t, label;

    // normalize
    std::string word;
    std::vector<std::string> facts;  // diagram labels whose facts may be used
    bool expect_zero = false;

    // validate
    std::string target;
};

struct Instance {
    SemigroupG g;
    Registry<AlgPtr> algebras;
    Registry<AlgebraHom> homs;
    Registry<FunctionalModule> modules;
    Registry<CornerRecipe> corner_recipes;
    Registry<Corner> corners;
    Registry<SplitExactSeq> sequences;
    Registry<L1Element> l1;
    Registry<DiagramSpec> diagrams;
    Registry<WordSpec> words;
    std::vector<RequestSpec> requests;

    // Programmatic construction. Each adder registers what it references
    // (algebras of homs, homs of L1 elements, ...) and throws InstanceError on
    // a label that is taken by a different object.
    void add_algebra(const AlgPtr& a);
    void add_hom(const AlgebraHom& h);
    void add_module(const FunctionalModule& m);
    const Corner& add_corner(const std::string& label, CornerRecipe r);
    const Corner& add_corner(const Corner& c);  // recipe derived from the corner
    void add_sequence(const SplitExactSeq& s);
    void add_l1(const L1Element& z);
    void add_diagram(const std::string& label, const DiagramCertificate& d);
    void add_word(const std::string& label, const MorphismWord& w);

    DiagramCertificate diagram(const std::string& label) const;
    MorphismWord word(const std::string& label) const;
    Generator generator(const RequestSpec& r) const;
    ProductRequest product_request(const RequestSpec& r) const;
};

Instance parse_instance(const std::string& text);
Instance load_instance(const std::string& path);
std::string serialize_instance(const Instance& inst);

struct RunOptions {
    std::vector<std::string> ids;  // empty: all requests of the command
    bool trace = false;
    unsigned jobs = 1;
    std::string instance_name;
};

struct RunResult {
    std::string report;  // gkfuse-report/1, pretty printed with a trailing newline
    int exit_code = 0;   // 0 all as expected, 1 a failure or an unexpected outcome
};

// `validate` checks every object of the file and the validate requests; the
// other commands run their requests (filtered by ids) in file order.
RunResult run(const Instance& inst, const std::string& command, const RunOptions& opts);

// Canonical text forms used in reports.
std::string scalar_text(const Scalar& s);

}  // namespace gk
