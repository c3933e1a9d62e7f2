#include "gk/semigroup.hpp"

#include <stdexcept>

namespace gk {

SemigroupG::SemigroupG(std::vector<std::string> names, std::vector<std::vector<std::size_t>> mult,
                       std::vector<std::size_t> star, std::size_t unit)
    : names_(std::move(names)), mult_(std::move(mult)), star_(std::move(star)), unit_(unit) {
    const std::size_t n = names_.size();
    if (n == 0) throw std::invalid_argument("semigroup must be nonempty");
    if (mult_.size() != n || star_.size() != n || unit_ >= n)
        throw std::invalid_argument("semigroup table size mismatch");
    for (const auto& row : mult_) {
        if (row.size() != n) throw std::invalid_argument("semigroup table size mismatch");
        for (auto x : row)
            if (x >= n) throw std::invalid_argument("semigroup table entry out of range");
    }
    for (auto x : star_)
        if (x >= n) throw std::invalid_argument("semigroup star entry out of range");
    for (std::size_t g = 0; g < n; ++g)
        if (mult_[g][g] == g) idempotents_.push_back(g);
}

SemigroupG SemigroupG::trivial() { return SemigroupG({"1"}, {{0}}, {0}, 0); }

SemigroupG SemigroupG::cyclic(std::size_t order) {
    if (order == 0) throw std::invalid_argument("cyclic group of order 0");
    std::vector<std::string> names;
    std::vector<std::vector<std::size_t>> mult(order, std::vector<std::size_t>(order));
    std::vector<std::size_t> star(order);
    for (std::size_t a = 0; a < order; ++a) {
        names.push_back(a == 0 ? "1" : "g" + (a == 1 ? std::string() : std::to_string(a)));
        star[a] = (order - a) % order;
        for (std::size_t b = 0; b < order; ++b) mult[a][b] = (a + b) % order;
    }
    return SemigroupG(names, mult, star, 0);
}

SemigroupG SemigroupG::semilattice2() { return SemigroupG({"1", "e"}, {{0, 1}, {1, 1}}, {0, 1}, 0); }

SemigroupG SemigroupG::klein4() {
    std::vector<std::vector<std::size_t>> mult(4, std::vector<std::size_t>(4));
    for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = 0; b < 4; ++b) mult[a][b] = a ^ b;
    return SemigroupG({"1", "a", "b", "ab"}, mult, {0, 1, 2, 3}, 0);
}

std::size_t SemigroupG::index_of(const std::string& name) const {
    for (std::size_t g = 0; g < names_.size(); ++g)
        if (names_[g] == name) return g;
    throw std::out_of_range("unknown semigroup element '" + name + "'");
}

std::string SemigroupG::validate() const {
    const std::size_t n = size();
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c)
                if (mult_[mult_[a][b]][c] != mult_[a][mult_[b][c]])
                    return "not associative at (" + names_[a] + "," + names_[b] + "," + names_[c] + ")";
    for (std::size_t a = 0; a < n; ++a) {
        if (mult_[unit_][a] != a || mult_[a][unit_] != a) return "unit fails at " + names_[a];
        std::size_t s = star_[a];
        if (mult_[mult_[a][s]][a] != a) return "g g* g != g at " + names_[a];
        if (mult_[mult_[s][a]][s] != s) return "g* g g* != g* at " + names_[a];
        if (star_[s] != a) return "star is not an involution at " + names_[a];
    }
    for (auto e : idempotents_)
        for (auto f : idempotents_)
            if (mult_[e][f] != mult_[f][e]) return "idempotents " + names_[e] + "," + names_[f] + " do not commute";
    return {};
}

}  // namespace gk
