#include "gk/fusion.hpp"

#include <stdexcept>

namespace gk {

// The chain is absorbed from the right: each z_i swallows the leading s+ of
// everything to its right, and the new matrix corner is then pushed right
// past every split it meets. What is left is one hom, the splits and a stack
// of corners, which the normalizer reproduces from the plain concatenation
// once the certified facts are available.
ChainNormalForm normal_form_chain(const SemigroupG& g, const std::vector<L1Element>& chain) {
    if (chain.empty()) throw std::invalid_argument("empty chain");
    for (std::size_t i = 0; i < chain.size(); ++i) {
        MorphismWord w = level_one_word(g, chain[i]);
        const auto& ts = w.terms[0].tokens;
        if (ts.size() != 3 || ts[0].kind != TokenKind::hom)
            throw std::invalid_argument("chain factor " + std::to_string(i) + " (" + chain[i].label +
                                        ") is not very special with a rotatable corner");
        if (i > 0 && chain[i - 1].b->label() != chain[i].a->label())
            throw std::invalid_argument("chain factors " + std::to_string(i - 1) + " and " + std::to_string(i) +
                                        " do not compose");
    }

    ChainNormalForm out;
    FactStore facts;
    std::vector<Token> current = level_one_word(g, chain.back()).terms[0].tokens;
    for (std::size_t i = chain.size() - 1; i-- > 0;) {
        const AlgebraHom phi = current.front().hom;
        AbsorbedFusion r = fuse_hom_right_absorbing(g, chain[i], phi);
        for (const DiagramReport& rep : r.fusion.reports) {
            out.certificates.push_back(rep);
            facts.add(*rep.fact);
        }
        std::vector<Token> next = level_one_word(g, r.fusion.out).terms[0].tokens;
        next.insert(next.end(), current.begin() + 1, current.end());
        // next = [u+, Delta_u, F^-1, Delta, ..., Delta, corners...]
        std::size_t pos = 2;
        while (pos + 1 < next.size() && next[pos + 1].kind == TokenKind::split) {
            CommuteFact cf = commute_inv_corner_past_split(g, *next[pos].corner, *next[pos + 1].split);
            next[pos] = cf.fact.rhs.terms[0].tokens[0];
            next[pos + 1] = cf.fact.rhs.terms[0].tokens[1];
            facts.add(cf.fact);
            out.commutations.push_back(std::move(cf));
            ++pos;
        }
        current = std::move(next);
    }

    MorphismWord word = level_one_word(g, chain.front());
    for (std::size_t i = 1; i < chain.size(); ++i) word = word.then(level_one_word(g, chain[i]));
    NormalizeOptions opts;
    opts.facts = &facts;
    out.word = normalize(word, opts, &out.log);

    if (out.word.terms.size() == 1 && out.word.terms[0].coeff == 1) {
        const auto& ts = out.word.terms[0].tokens;
        bool ok = ts.size() == chain.size() + 2 && ts.front().kind == TokenKind::hom &&
                  ts.back().kind == TokenKind::inv_corner;
        for (std::size_t k = 1; ok && k + 1 < ts.size(); ++k) ok = ts[k].kind == TokenKind::split;
        out.shape_ok = ok;
    }
    return out;
}

}  // namespace gk
