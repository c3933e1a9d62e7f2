#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

namespace gk {

// Finite unital inverse semigroup given by its multiplication table.
// Element 0 need not be the unit; `unit` names it.
class SemigroupG {
public:
    SemigroupG() : SemigroupG(trivial()) {}
    SemigroupG(std::vector<std::string> names, std::vector<std::vector<std::size_t>> mult,
               std::vector<std::size_t> star, std::size_t unit);

    static SemigroupG trivial();
    static SemigroupG cyclic(std::size_t order);
    // {1, e} with e*e = e, e* = e.
    static SemigroupG semilattice2();
    // The Klein four group Z/2 x Z/2.
    static SemigroupG klein4();

    std::size_t size() const { return names_.size(); }
    std::size_t unit() const { return unit_; }
    std::size_t mul(std::size_t g, std::size_t h) const { return mult_[g][h]; }
    std::size_t star(std::size_t g) const { return star_[g]; }
    const std::string& name(std::size_t g) const { return names_[g]; }
    const std::vector<std::string>& names() const { return names_; }
    const std::vector<std::vector<std::size_t>>& table() const { return mult_; }
    const std::vector<std::size_t>& star_table() const { return star_; }
    std::size_t index_of(const std::string& name) const;

    const std::vector<std::size_t>& idempotents() const { return idempotents_; }
    bool is_group() const { return idempotents_.size() == 1; }

    // Empty string when valid, otherwise a description of the first failure.
    std::string validate() const;

private:
    std::vector<std::string> names_;
    std::vector<std::vector<std::size_t>> mult_;
    std::vector<std::size_t> star_;
    std::size_t unit_ = 0;
    std::vector<std::size_t> idempotents_;
};

using GroupPtr = std::shared_ptr<const SemigroupG>;

}  // namespace gk
