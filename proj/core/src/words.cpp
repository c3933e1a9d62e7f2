#include "gk/words.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace gk {

namespace {

bool same_object(const AlgPtr& a, const AlgPtr& b) { return a->label() == b->label() && a->dim() == b->dim(); }

std::string endpoints(const AlgPtr& s, const AlgPtr& t) { return s->label() + ">" + t->label(); }

Subspace column_span(const Mat& m) {
    Subspace s(m.rows());
    for (std::size_t c = 0; c < m.cols(); ++c) s.add(m.col(c));
    return s;
}

std::string short_label(std::string l, const AlgebraHom& h) {
    if (l.size() <= 48) return l;
    return "h[" + h.source->label() + ">" + h.target->label() + "]";
}

Token identity_token(const AlgPtr& a) { return Token::of(AlgebraHom::identity(a)); }

std::string term_str(const Term& t) {
    std::string out = std::to_string(t.coeff) + "*[";
    for (std::size_t k = 0; k < t.tokens.size(); ++k) {
        if (k) out += " . ";
        out += t.tokens[k].name();
    }
    return out + "]";
}

std::string terms_str(const std::vector<Term>& ts) {
    if (ts.empty()) return "0";
    std::string out;
    for (std::size_t k = 0; k < ts.size(); ++k) {
        if (k) out += " + ";
        out += term_str(ts[k]);
    }
    return out;
}

std::string term_key(const Term& t) {
    std::string k;
    for (const Token& tok : t.tokens) {
        k += tok.key();
        k += '|';
    }
    return k;
}

void combine_like_terms(std::vector<Term>& terms) {
    std::map<std::string, Term> acc;
    for (Term& t : terms) {
        auto [it, fresh] = acc.try_emplace(term_key(t), t);
        if (!fresh) it->second.coeff += t.coeff;
    }
    terms.clear();
    for (auto& [k, t] : acc)
        if (t.coeff != 0) terms.push_back(std::move(t));
}

// A rule looks at one term and, on a match, returns the leftmost position and
// the terms replacing it.
struct Match {
    std::size_t position = 0;
    std::vector<Term> replacement;
};
using Rule = std::optional<Match> (*)(const Term&, const NormalizeOptions&);

std::vector<Token> splice(const std::vector<Token>& ts, std::size_t pos, std::size_t len,
                          const std::vector<Token>& middle) {
    std::vector<Token> out(ts.begin(), ts.begin() + static_cast<std::ptrdiff_t>(pos));
    out.insert(out.end(), middle.begin(), middle.end());
    out.insert(out.end(), ts.begin() + static_cast<std::ptrdiff_t>(pos + len), ts.end());
    return out;
}

Term removed(const Term& t, std::size_t pos, std::size_t len, const AlgPtr& fallback) {
    Term r{t.coeff, splice(t.tokens, pos, len, {})};
    if (r.tokens.empty()) r.tokens.push_back(identity_token(fallback));
    return r;
}

bool hom_is(const Token& t) { return t.kind == TokenKind::hom; }

bool hom_matches(const AlgebraHom& a, const AlgebraHom& b) {
    return same_object(a.source, b.source) && same_object(a.target, b.target) && a.matrix == b.matrix;
}

std::optional<Match> rule_zero(const Term& t, const NormalizeOptions&) {
    for (std::size_t p = 0; p < t.tokens.size(); ++p)
        if (hom_is(t.tokens[p]) && t.tokens[p].hom.matrix.is_zero()) return Match{p, {}};
    return std::nullopt;
}

std::optional<Match> rule_identity(const Term& t, const NormalizeOptions&) {
    if (t.tokens.size() < 2) return std::nullopt;
    for (std::size_t p = 0; p < t.tokens.size(); ++p) {
        const Token& k = t.tokens[p];
        if (hom_is(k) && k.hom.source->label() == k.hom.target->label() && k.hom.matrix.is_identity())
            return Match{p, {removed(t, p, 1, k.hom.source)}};
    }
    return std::nullopt;
}

std::optional<Match> rule_cancel(const Term& t, const NormalizeOptions&) {
    for (std::size_t p = 0; p + 1 < t.tokens.size(); ++p) {
        const Token& a = t.tokens[p];
        const Token& b = t.tokens[p + 1];
        if (hom_is(a) && b.kind == TokenKind::inv_corner && hom_matches(a.hom, b.corner->hom))
            return Match{p, {removed(t, p, 2, a.hom.source)}};
        if (a.kind == TokenKind::inv_corner && hom_is(b) && hom_matches(b.hom, a.corner->hom))
            return Match{p, {removed(t, p, 2, a.corner->target())}};
        if (hom_is(a) && b.kind == TokenKind::split && hom_matches(a.hom, b.split->iota))
            return Match{p, {removed(t, p, 2, a.hom.source)}};
    }
    return std::nullopt;
}

// Delta_s . iota = id_X - f . s, only where the new homs can fuse with a
// neighbour (or the pair is the whole word); otherwise it would loop.
std::optional<Match> rule_expand(const Term& t, const NormalizeOptions&) {
    const auto& ts = t.tokens;
    for (std::size_t p = 0; p + 1 < ts.size(); ++p) {
        if (ts[p].kind != TokenKind::split || !hom_is(ts[p + 1])) continue;
        const SplitExactSeq& s = *ts[p].split;
        if (!hom_matches(ts[p + 1].hom, s.iota)) continue;
        bool gate = ts.size() == 2 || (p > 0 && hom_is(ts[p - 1])) || (p + 2 < ts.size() && hom_is(ts[p + 2]));
        if (!gate) continue;
        Term keep = removed(t, p, 2, s.X());
        Term sub{-t.coeff, splice(ts, p, 2, {Token::of(s.f), Token::of(s.s)})};
        return Match{p, {keep, sub}};
    }
    return std::nullopt;
}

std::optional<Match> rule_fuse(const Term& t, const NormalizeOptions&) {
    for (std::size_t p = 0; p + 1 < t.tokens.size(); ++p) {
        const Token& a = t.tokens[p];
        const Token& b = t.tokens[p + 1];
        if (!hom_is(a) || !hom_is(b)) continue;
        AlgebraHom h = a.hom.then(b.hom);
        h.label = short_label(h.label, h);
        return Match{p, {Term{t.coeff, splice(t.tokens, p, 2, {Token::of(h)})}}};
    }
    return std::nullopt;
}

std::optional<Match> rule_into_split(const Term& t, const NormalizeOptions&) {
    for (std::size_t p = 0; p + 1 < t.tokens.size(); ++p) {
        const Token& a = t.tokens[p];
        const Token& b = t.tokens[p + 1];
        if (!hom_is(a) || b.kind != TokenKind::split) continue;
        const SplitExactSeq& s = *b.split;
        Subspace ij = column_span(s.iota.matrix);
        if (ij.dim() != s.J()->dim()) continue;
        Mat pre(s.J()->dim(), a.hom.source->dim());
        bool inside = true;
        for (std::size_t c = 0; c < pre.cols() && inside; ++c) {
            auto co = ij.coords(a.hom.matrix.col(c));
            if (!co) inside = false;
            else pre.set_col(c, *co);
        }
        if (inside) {
            AlgebraHom h(a.hom.source, s.J(), std::move(pre), short_label(a.hom.label + ";Delta", a.hom));
            return Match{p, {Term{t.coeff, splice(t.tokens, p, 2, {Token::of(h)})}}};
        }
    }
    return std::nullopt;
}

std::optional<Match> rule_split_kills(const Term& t, const NormalizeOptions&) {
    for (std::size_t p = 0; p + 1 < t.tokens.size(); ++p) {
        const Token& a = t.tokens[p];
        const Token& b = t.tokens[p + 1];
        if (!hom_is(a) || b.kind != TokenKind::split) continue;
        Subspace sa = column_span(b.split->s.matrix);
        bool inside = true;
        for (std::size_t c = 0; c < a.hom.matrix.cols() && inside; ++c) inside = sa.contains(a.hom.matrix.col(c));
        if (inside) return Match{p, {}};
    }
    return std::nullopt;
}

std::optional<Match> rule_merge(const Term& t, const NormalizeOptions&) {
    for (std::size_t p = 0; p + 1 < t.tokens.size(); ++p) {
        const Token& a = t.tokens[p];
        const Token& b = t.tokens[p + 1];
        if (a.kind != TokenKind::inv_corner || b.kind != TokenKind::inv_corner) continue;
        Token merged = Token::inv(compose_corners(*b.corner, *a.corner));
        return Match{p, {Term{t.coeff, splice(t.tokens, p, 2, {merged})}}};
    }
    return std::nullopt;
}

// Very special matrix corners whose sigma treats all diagonal corners alike:
// every diagonal corner embedding then inverts to the same element.
bool rotatable(const Corner& c) {
    if (c.kind != CornerKind::canonical_matrix || c.cls != Speciality::very_special) return false;
    const std::size_t n = c.n;
    for (const Mat& s : c.sigma)
        for (std::size_t k = 1; k < n; ++k)
            if (s(k * n + k, k * n + k) != s(0, 0)) return false;
    return true;
}

// Which diagonal block of M_n(B) contains the image of h, with h read back into B.
std::optional<std::pair<std::size_t, Mat>> diagonal_block(const AlgebraHom& h, std::size_t n, std::size_t d) {
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t off = (k * n + k) * d;
        bool fits = true;
        for (std::size_t r = 0; r < h.matrix.rows() && fits; ++r) {
            if (r >= off && r < off + d) continue;
            for (std::size_t c = 0; c < h.matrix.cols() && fits; ++c) fits = h.matrix(r, c).is_zero();
        }
        if (!fits) continue;
        Mat inner(d, h.matrix.cols());
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t c = 0; c < h.matrix.cols(); ++c) inner(r, c) = h.matrix(off + r, c);
        return std::make_pair(k, std::move(inner));
    }
    return std::nullopt;
}

std::optional<Match> rule_rotate(const Term& t, const NormalizeOptions&) {
    for (std::size_t p = 0; p + 1 < t.tokens.size(); ++p) {
        const Token& a = t.tokens[p];
        const Token& b = t.tokens[p + 1];
        if (!hom_is(a) || b.kind != TokenKind::inv_corner) continue;
        const Corner& c = *b.corner;
        if (!rotatable(c) || !same_object(a.hom.target, c.target())) continue;
        auto blk = diagonal_block(a.hom, c.n, c.source()->dim());
        if (!blk) continue;
        AlgebraHom h(a.hom.source, c.source(), std::move(blk->second), short_label(a.hom.label + ";rot", a.hom));
        return Match{p, {Term{t.coeff, splice(t.tokens, p, 2, {Token::of(h)})}}};
    }
    return std::nullopt;
}

// s . f2 . f1^-1 . Delta_s = 0: an element whose two splits agree vanishes.
std::optional<Match> rule_zero_law(const Term& t, const NormalizeOptions&) {
    for (std::size_t p = 0; p + 2 < t.tokens.size(); ++p) {
        const Token& a = t.tokens[p];
        const Token& b = t.tokens[p + 1];
        const Token& c = t.tokens[p + 2];
        if (!hom_is(a) || b.kind != TokenKind::inv_corner || c.kind != TokenKind::split) continue;
        const Corner& f1 = *b.corner;
        if (f1.kind != CornerKind::canonical_matrix || f1.n != 2 || f1.position != 0) continue;
        const SplitExactSeq& s = *c.split;
        if (!same_object(a.hom.target, f1.target()) || !same_object(a.hom.source, s.A())) continue;
        if (a.hom.matrix == corner_matrix(2, s.X()->dim(), 1) * s.s.matrix) return Match{p, {}};
    }
    return std::nullopt;
}

std::optional<Match> rule_facts(const Term& t, const NormalizeOptions& o) {
    if (!o.facts) return std::nullopt;
    for (std::size_t p = 0; p < t.tokens.size(); ++p)
        for (const Fact& f : o.facts->facts()) {
            const std::size_t len = f.lhs.size();
            if (len == 0 || p + len > t.tokens.size()) continue;
            if (!std::equal(f.lhs.begin(), f.lhs.end(), t.tokens.begin() + static_cast<std::ptrdiff_t>(p))) continue;
            Match m{p, {}};
            for (const Term& r : f.rhs.terms)
                m.replacement.push_back(Term{t.coeff * r.coeff, splice(t.tokens, p, len, r.tokens)});
            return m;
        }
    return std::nullopt;
}

struct NamedRule {
    const char* name;
    Rule fn;
};

constexpr NamedRule kRules[] = {
    {"zero hom", rule_zero},
    {"identity", rule_identity},
    {"cancel", rule_cancel},
    {"expanding", rule_expand},
    {"fuse homs", rule_fuse},
    {"factor through ideal", rule_into_split},
    {"split kills", rule_split_kills},
    {"rotation", rule_rotate},
    {"zero law", rule_zero_law},
    {"fact", rule_facts},
    {"merge corners", rule_merge},
};

}  // namespace

// ---- tokens -------------------------------------------------------------------

Token Token::of(AlgebraHom h) {
    Token t;
    t.kind = TokenKind::hom;
    t.hom = std::move(h);
    return t;
}

Token Token::inv(Corner c) {
    Token t;
    t.kind = TokenKind::inv_corner;
    t.corner = std::make_shared<const Corner>(std::move(c));
    return t;
}

Token Token::delta(SplitExactSeq s) {
    Token t;
    t.kind = TokenKind::split;
    t.split = std::make_shared<const SplitExactSeq>(std::move(s));
    return t;
}

const AlgPtr& Token::source() const {
    switch (kind) {
        case TokenKind::hom: return hom.source;
        case TokenKind::inv_corner: return corner->target();
        case TokenKind::split: return split->X();
    }
    throw std::logic_error("bad token kind");
}

const AlgPtr& Token::target() const {
    switch (kind) {
        case TokenKind::hom: return hom.target;
        case TokenKind::inv_corner: return corner->source();
        case TokenKind::split: return split->J();
    }
    throw std::logic_error("bad token kind");
}

std::string Token::name() const {
    switch (kind) {
        case TokenKind::hom: return hom.label.empty() ? "h" : hom.label;
        case TokenKind::inv_corner: return corner->label + "^-1";
        case TokenKind::split: return "D[" + split->label + "]";
    }
    return {};
}

std::string Token::key() const {
    switch (kind) {
        case TokenKind::hom: return "h:" + endpoints(hom.source, hom.target) + ":" + hom.matrix.to_string();
        case TokenKind::inv_corner:
            return "c:" + endpoints(corner->source(), corner->target()) + ":" + corner->hom.matrix.to_string();
        case TokenKind::split:
            return "d:" + endpoints(split->X(), split->J()) + ":" + split->iota.matrix.to_string() + ":" +
                   split->s.matrix.to_string();
    }
    return {};
}

bool operator==(const Token& a, const Token& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case TokenKind::hom: return hom_matches(a.hom, b.hom);
        case TokenKind::inv_corner: return hom_matches(a.corner->hom, b.corner->hom);
        case TokenKind::split:
            return hom_matches(a.split->iota, b.split->iota) && hom_matches(a.split->s, b.split->s);
    }
    return false;
}

// ---- words --------------------------------------------------------------------

MorphismWord MorphismWord::identity(const AlgPtr& a) { return of({identity_token(a)}); }

MorphismWord MorphismWord::zero(const AlgPtr& s, const AlgPtr& t) {
    MorphismWord w;
    w.source = s;
    w.target = t;
    return w;
}

MorphismWord MorphismWord::of(std::vector<Token> tokens, long coeff) {
    if (tokens.empty()) throw std::invalid_argument("a word needs at least one token");
    MorphismWord w;
    w.source = tokens.front().source();
    w.target = tokens.back().target();
    w.terms.push_back(Term{coeff, std::move(tokens)});
    w.check();
    return w;
}

void MorphismWord::check() const {
    for (const Term& t : terms) {
        if (t.tokens.empty()) throw std::invalid_argument("empty term");
        if (!same_object(t.tokens.front().source(), source))
            throw std::invalid_argument("term " + term_str(t) + " does not start at " + source->label());
        if (!same_object(t.tokens.back().target(), target))
            throw std::invalid_argument("term " + term_str(t) + " does not end at " + target->label());
        for (std::size_t k = 0; k + 1 < t.tokens.size(); ++k)
            if (!same_object(t.tokens[k].target(), t.tokens[k + 1].source()))
                throw std::invalid_argument("term " + term_str(t) + " does not compose at position " +
                                            std::to_string(k) + ": " + t.tokens[k].target()->label() + " vs " +
                                            t.tokens[k + 1].source()->label());
    }
}

std::string MorphismWord::str() const { return terms_str(terms); }

MorphismWord MorphismWord::operator-() const {
    MorphismWord w = *this;
    for (Term& t : w.terms) t.coeff = -t.coeff;
    return w;
}

MorphismWord operator+(const MorphismWord& a, const MorphismWord& b) {
    if (!same_object(a.source, b.source) || !same_object(a.target, b.target))
        throw std::invalid_argument("sum of words with different endpoints: " + endpoints(a.source, a.target) +
                                    " and " + endpoints(b.source, b.target));
    MorphismWord w = a;
    w.terms.insert(w.terms.end(), b.terms.begin(), b.terms.end());
    return w;
}

MorphismWord MorphismWord::then(const MorphismWord& b) const {
    if (!same_object(target, b.source))
        throw std::invalid_argument("cannot compose " + endpoints(source, target) + " with " +
                                    endpoints(b.source, b.target));
    MorphismWord w = zero(source, b.target);
    for (const Term& x : terms)
        for (const Term& y : b.terms) {
            Term t{x.coeff * y.coeff, x.tokens};
            t.tokens.insert(t.tokens.end(), y.tokens.begin(), y.tokens.end());
            w.terms.push_back(std::move(t));
        }
    return w;
}

void Derivation::append(const Derivation& other, const std::string& prefix) {
    for (RewriteStep s : other.steps) {
        s.rule = prefix + s.rule;
        steps.push_back(std::move(s));
    }
}

void FactStore::add(Fact f) {
    if (f.certificate.empty()) throw std::invalid_argument("fact '" + f.name + "' has no certificate");
    MorphismWord lhs = normalize(MorphismWord::of(f.lhs));
    if (lhs.terms.size() != 1 || lhs.terms[0].coeff != 1)
        throw std::invalid_argument("fact '" + f.name + "': left side does not normalize to a single word");
    f.lhs = lhs.terms[0].tokens;
    f.rhs = normalize(f.rhs);
    facts_.push_back(std::move(f));
}

// ---- normalization ------------------------------------------------------------

MorphismWord normalize(const MorphismWord& w, const NormalizeOptions& opts, Derivation* log) {
    w.check();
    MorphismWord cur = w;
    std::size_t steps = 0;
    for (;;) {
        bool applied = false;
        for (const NamedRule& rule : kRules) {
            for (std::size_t ti = 0; ti < cur.terms.size() && !applied; ++ti) {
                auto m = rule.fn(cur.terms[ti], opts);
                if (!m) continue;
                if (++steps > opts.max_steps)
                    throw std::runtime_error("normalization exceeded " + std::to_string(opts.max_steps) + " steps");
                if (log)
                    log->steps.push_back(
                        {rule.name, ti, m->position, term_str(cur.terms[ti]), terms_str(m->replacement)});
                std::vector<Term> next(cur.terms.begin(), cur.terms.begin() + static_cast<std::ptrdiff_t>(ti));
                next.insert(next.end(), m->replacement.begin(), m->replacement.end());
                next.insert(next.end(), cur.terms.begin() + static_cast<std::ptrdiff_t>(ti + 1), cur.terms.end());
                cur.terms = std::move(next);
                applied = true;
            }
            if (applied) break;
        }
        if (applied) continue;
        std::vector<Term> before = cur.terms;
        combine_like_terms(cur.terms);
        const bool changed = before.size() != cur.terms.size() ||
                             !std::equal(before.begin(), before.end(), cur.terms.begin(),
                                         [](const Term& a, const Term& b) {
                                             return a.coeff == b.coeff && term_key(a) == term_key(b);
                                         });
        if (changed && log) log->steps.push_back({"combine", 0, 0, terms_str(before), terms_str(cur.terms)});
        break;
    }
    cur.check();
    return cur;
}

bool same_normal_form(const MorphismWord& a, const MorphismWord& b, const NormalizeOptions& opts) {
    return normalize(a - b, opts).is_zero();
}

bool vanishes_by_split(const MorphismWord& w, const SplitExactSeq& seq, const NormalizeOptions& opts,
                       Derivation* log) {
    if (!same_object(w.source, seq.X()))
        throw std::invalid_argument("word starts at " + w.source->label() + ", split is on " + seq.X()->label());
    Derivation di, ds;
    bool on_ideal = normalize(MorphismWord::of({Token::of(seq.iota)}).then(w), opts, &di).is_zero();
    bool on_split = normalize(MorphismWord::of({Token::of(seq.s)}).then(w), opts, &ds).is_zero();
    if (log) {
        log->append(di, "iota: ");
        log->append(ds, "s: ");
    }
    return on_ideal && on_split;
}

// ---- level-one words and certificates ---------------------------------------------

MorphismWord level_one_word(const SemigroupG& g, const L1Element& z) {
    L1Report rep = validate_l1(g, z);
    if (!rep.ok) throw std::invalid_argument("level-one element " + z.label + " fails " + rep.condition + ": " + rep.witness);
    M2Corners c = m2_corners(g, z);
    std::vector<Token> ts;
    if (c.f1.cls == Speciality::very_special && rotatable(c.f1)) {
        ts.push_back(Token::of(AlgebraHom(z.a, z.x, z.s_plus.matrix, "s+_" + z.label)));
    } else {
        ts.push_back(Token::of(AlgebraHom(z.a, c.x_plus, z.s_plus.matrix, "s+_" + z.label)));
        ts.push_back(Token::of(c.f2));
        ts.push_back(Token::inv(c.f1));
    }
    ts.push_back(Token::delta(minus_split(z)));
    if (z.exit.psi) ts.push_back(Token::of(*z.exit.psi));
    ts.push_back(Token::inv(z.exit.corner));
    return MorphismWord::of(std::move(ts));
}

DiagramReport check_diagram(const SemigroupG& g, const DiagramCertificate& c) {
    DiagramReport rep;
    auto bad = [&](std::string cond, std::string w) {
        rep.ok = false;
        rep.condition = c.label + ": " + std::move(cond);
        rep.witness = std::move(w);
        return rep;
    };
    for (const L1Element* z : {&c.top, &c.bottom}) {
        L1Report r = validate_l1(g, *z);
        if (!r.ok) return bad("row " + z->label + " " + r.condition, r.witness);
    }
    struct Leg {
        const char* name;
        const AlgebraHom* h;
        AlgPtr from, to;
    };
    const Leg legs[] = {{"k", &c.k, c.top.b, c.bottom.b},
                        {"l", &c.l, c.top.j, c.bottom.j},
                        {"m", &c.m, c.top.x, c.bottom.x},
                        {"e", &c.e, c.top.a, c.bottom.a}};
    for (const Leg& leg : legs) {
        if (!same_object(leg.h->source, leg.from) || !same_object(leg.h->target, leg.to))
            return bad(std::string("typing of ") + leg.name,
                       leg.h->label + " is " + endpoints(leg.h->source, leg.h->target) + ", expected " +
                           endpoints(leg.from, leg.to));
        HomReport hr = check_hom(g, AlgebraHom(leg.from, leg.to, leg.h->matrix, leg.h->label));
        if (!hr.ok()) return bad(std::string(leg.name) + " is a hom", hr.witness);
    }
    const Corner& ft = c.top.exit.corner;
    const Corner& fb = c.bottom.exit.corner;
    AlgebraHom kmap = c.exit_map ? *c.exit_map : c.l;
    if (kmap.matrix.cols() != ft.target()->dim() || kmap.matrix.rows() != fb.target()->dim())
        return bad("exit map typing", "exit map does not run " + endpoints(ft.target(), fb.target()));
    if (kmap.matrix * ft.hom.matrix != fb.hom.matrix * c.k.matrix)
        return bad("exit square", "K o f_top != f_bottom o k");
    const Mat psi_top = c.top.exit.psi ? c.top.exit.psi->matrix : Mat::identity(c.top.j->dim());
    const Mat psi_bot = c.bottom.exit.psi ? c.bottom.exit.psi->matrix : Mat::identity(c.bottom.j->dim());
    if (kmap.matrix * psi_top != psi_bot * c.l.matrix) return bad("psi square", "K o psi_top != psi_bottom o l");
    if (c.m.matrix * c.top.iota.matrix != c.bottom.iota.matrix * c.l.matrix)
        return bad("ideal square", "m o iota_top != iota_bottom o l");
    if (c.m.matrix * c.top.s_minus.matrix != c.bottom.s_minus.matrix * c.e.matrix)
        return bad("s- square", "m o s-_top != s-_bottom o e");
    if (c.m.matrix * c.top.s_plus.matrix != c.bottom.s_plus.matrix * c.e.matrix)
        return bad("s+ square", "m o s+_top != s+_bottom o e");
    for (std::size_t k = 0; k < g.size(); ++k)
        for (std::size_t blk = 0; blk < 4; ++blk)
            if (c.m.matrix * c.top.m2.delta.blocks[k][blk] != c.bottom.m2.delta.blocks[k][blk] * c.m.matrix)
                return bad("M2 equivariance",
                           "m does not intertwine block " + std::to_string(blk) + " at g=" + g.name(k));
    Fact f;
    f.name = c.label;
    f.certificate = "diagram " + c.label;
    f.lhs = level_one_word(g, c.top).terms[0].tokens;
    f.lhs.push_back(Token::of(c.k));
    f.rhs = MorphismWord::of({Token::of(c.e)}).then(level_one_word(g, c.bottom));
    rep.fact = std::move(f);
    return rep;
}

CommuteFact commute_inv_corner_past_split(const SemigroupG& g, const Corner& e_m, const SplitExactSeq& seq) {
    if (e_m.kind != CornerKind::canonical_matrix || e_m.cls != Speciality::very_special)
        throw std::invalid_argument("corner " + e_m.label + " is not a very special matrix corner");
    if (!same_object(e_m.source(), seq.X()))
        throw std::invalid_argument("corner " + e_m.label + " starts at " + e_m.source()->label() + ", not at " +
                                    seq.X()->label());
    CommuteFact out;
    out.tensored = tensor_split(seq, e_m.n, e_m.sigma);
    if (auto r = validate_split(g, out.tensored); !r.ok)
        throw std::runtime_error("tensored split fails " + r.condition + ": " + r.witness);
    out.e_j = canonical_matrix_corner(g, seq.J(), e_m.n, e_m.sigma, "e_" + seq.J()->label(), e_m.position);
    if (!same_object(e_m.target(), out.tensored.X()) || !same_object(out.e_j.target(), out.tensored.J()))
        throw std::logic_error("matrix algebra labels disagree between corners and the tensored split");
    MorphismWord lhs = MorphismWord::of({Token::of(e_m.hom), Token::delta(out.tensored)});
    MorphismWord rhs = MorphismWord::of({Token::delta(seq), Token::of(out.e_j.hom)});
    if (!vanishes_by_split(lhs - rhs, seq, {}, &out.proof))
        throw std::runtime_error("e_M . Delta_{s(x)id} = Delta_s . e_J does not normalize");
    out.fact.name = "commute " + e_m.label + " past " + seq.label;
    out.fact.certificate = "e_M . Delta_{s(x)id} = Delta_s . e_J on iota(J) and s(A)";
    out.fact.lhs = {Token::inv(e_m), Token::delta(seq)};
    out.fact.rhs = MorphismWord::of({Token::delta(out.tensored), Token::inv(out.e_j)});
    return out;
}

}  // namespace gk
