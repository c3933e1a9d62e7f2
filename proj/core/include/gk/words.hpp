#pragma once

#include "gk/sequences.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace gk {

enum class TokenKind { hom, inv_corner, split };

// One generator. Homs and corners run source -> target as algebra maps; an
// inverse corner e^-1 runs from the corner's target back to its source, and a
// split Delta_s runs from X to J.
struct Token {
    TokenKind kind = TokenKind::hom;
    AlgebraHom hom;
    std::shared_ptr<const Corner> corner;
    std::shared_ptr<const SplitExactSeq> split;

    static Token of(AlgebraHom h);
    static Token inv(Corner c);
    static Token delta(SplitExactSeq s);

    const AlgPtr& source() const;
    const AlgPtr& target() const;
    std::string name() const;
    // Content key: kind, endpoint labels and matrices. Two tokens are equal
    // exactly when their keys agree; labels of the maps themselves are ignored.
    std::string key() const;
};

bool operator==(const Token& a, const Token& b);
inline bool operator!=(const Token& a, const Token& b) { return !(a == b); }

struct Term {
    long coeff = 1;
    std::vector<Token> tokens;  // read left to right: the first token acts first
};

// An integer combination of composable generator strings with common source
// and target. No terms means the zero morphism.
struct MorphismWord {
    AlgPtr source;
    AlgPtr target;
    std::vector<Term> terms;

    static MorphismWord identity(const AlgPtr& a);
    static MorphismWord zero(const AlgPtr& s, const AlgPtr& t);
    static MorphismWord of(std::vector<Token> tokens, long coeff = 1);

    bool is_zero() const { return terms.empty(); }
    // Throws std::invalid_argument when some term does not compose.
    void check() const;
    std::string str() const;

    MorphismWord operator-() const;
    friend MorphismWord operator+(const MorphismWord& a, const MorphismWord& b);
    friend MorphismWord operator-(const MorphismWord& a, const MorphismWord& b) { return a + (-b); }
    // a then b.
    MorphismWord then(const MorphismWord& b) const;
};

struct RewriteStep {
    std::string rule;
    std::size_t term = 0;
    std::size_t position = 0;
    std::string before;
    std::string after;
};

struct Derivation {
    std::vector<RewriteStep> steps;
    void append(const Derivation& other, const std::string& prefix);
};

// A certified equation lhs = rhs, applied left to right on subwords.
struct Fact {
    std::string name;
    std::vector<Token> lhs;
    MorphismWord rhs;
    std::string certificate;
};

class FactStore {
public:
    // Normalizes both sides (without facts) before storing. Facts without a
    // certificate are rejected.
    void add(Fact f);
    const std::vector<Fact>& facts() const { return facts_; }

private:
    std::vector<Fact> facts_;
};

struct NormalizeOptions {
    const FactStore* facts = nullptr;
    std::size_t max_steps = 20000;
};

MorphismWord normalize(const MorphismWord& w, const NormalizeOptions& opts = {}, Derivation* log = nullptr);
// Equal after normalization, term by term.
bool same_normal_form(const MorphismWord& a, const MorphismWord& b, const NormalizeOptions& opts = {});

// w: X -> Y vanishes when iota.w and s.w both normalize to zero, because
// id_X = Delta_s.iota + f.s.
bool vanishes_by_split(const MorphismWord& w, const SplitExactSeq& seq, const NormalizeOptions& opts = {},
                       Derivation* log = nullptr);

// s+ . f2 . f1^-1 . Delta_{s-} . [psi] . e^-1, with f2 . f1^-1 dropped when the
// M2-space is very special. Throws when z does not validate.
MorphismWord level_one_word(const SemigroupG& g, const L1Element& z);

// Two level-one elements joined by k: B -> B', l: J -> J', m: X -> X' and
// e: A -> A'. When the exits carry psi, exit_map is the map between the
// corner targets (defaults to l).
struct DiagramCertificate {
    std::string label;
    L1Element top;
    L1Element bottom;
    AlgebraHom k;
    AlgebraHom l;
    AlgebraHom m;
    AlgebraHom e;
    std::optional<AlgebraHom> exit_map;
};

struct DiagramReport : CheckReport {
    std::optional<Fact> fact;  // top . k = e . bottom
};

DiagramReport check_diagram(const SemigroupG& g, const DiagramCertificate& c);

// For a very special canonical matrix corner e_M: M -> M_n(M) and a split
// sequence (J, M, A): e_M^-1 . Delta_s = Delta_{s(x)id} . e_J^-1, verified
// through e_M . Delta_{s(x)id} = Delta_s . e_J.
struct CommuteFact {
    Fact fact;
    SplitExactSeq tensored;
    Corner e_j;
    Derivation proof;
};

CommuteFact commute_inv_corner_past_split(const SemigroupG& g, const Corner& e_m, const SplitExactSeq& seq);

// s+ Delta_1 ... Delta_n e^-1 for a chain of very special level-one elements
// (the first factor acts first).
struct ChainNormalForm {
    MorphismWord word;
    std::vector<DiagramReport> certificates;
    std::vector<CommuteFact> commutations;
    Derivation log;
    bool shape_ok = false;
};

ChainNormalForm normal_form_chain(const SemigroupG& g, const std::vector<L1Element>& chain);

}  // namespace gk
