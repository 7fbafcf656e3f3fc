#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "superkoszul/scalar.hpp"

namespace superkoszul {

/// Z2 grade. 0 = even, 1 = odd.
using Parity = int;

enum class Role {
    Base,                  // x^a
    Antifiber,             // x*_a         parity a~+1
    TangentFiber,          // dx^a         parity a~+1
    BaseMomentum,          // p_a          parity a~
    AntifiberMomentum,     // pi^a  (conjugate to x*_a), parity a~+1
    TangentFiberMomentum,  // pi_a  (conjugate to dx^a), parity a~+1
    Auxiliary,
};

struct Generator {
    std::string name;
    Parity parity = 0;
    Role role = Role::Base;
    int base_index = -1;  // which base coordinate this generator belongs to
    int copy = 0;         // 0 = source copy, 1 = second (target) copy
};

/// The coordinate universe: an ordered list of graded generators.
/// The list order is the canonical monomial order.
class Chart {
  public:
    explicit Chart(std::vector<Generator> gens);

    int size() const { return static_cast<int>(gens_.size()); }
    const Generator& gen(int i) const { return gens_[static_cast<size_t>(i)]; }
    const std::vector<Generator>& gens() const { return gens_; }

    int index_of(const std::string& name) const;
    std::optional<int> try_index_of(const std::string& name) const;

    /// Generator with the given role/base coordinate/copy, or -1.
    int find(Role role, int base_index, int copy = 0) const;

    /// Indices of all generators with the given role (and copy).
    std::vector<int> indices(Role role, int copy = 0) const;

    int base_count() const { return base_count_; }

    bool same_as(const Chart& o) const;

  private:
    std::vector<Generator> gens_;
    std::map<std::string, int> by_name_;
    int base_count_ = 0;
};

using ChartPtr = std::shared_ptr<const Chart>;

/// Assembles standard charts from a list of base coordinates.
/// Families are appended in the order the with_* calls are made.
class ChartBuilder {
  public:
    ChartBuilder& base(const std::string& name, Parity parity);

    /// x*_a for every base coordinate; generator named <base>s.
    ChartBuilder& with_antifibers(int copy = 0);
    /// dx^a; generator named d<base>.
    ChartBuilder& with_tangent_fibers(int copy = 0);
    /// p_a; generator named <base>_p.
    ChartBuilder& with_base_momenta(int copy = 0);
    /// pi^a conjugate to x*_a; generator named <base>s_p.
    ChartBuilder& with_antifiber_momenta(int copy = 0);
    /// pi_a conjugate to dx^a; generator named d<base>_p.
    ChartBuilder& with_tangent_momenta(int copy = 0);
    ChartBuilder& auxiliary(const std::string& name, Parity parity);

    ChartPtr build() const { return std::make_shared<Chart>(gens_); }

  private:
    std::vector<Generator> bases_;
    std::vector<Generator> gens_;
};

/// Name prefix used for second-copy (target) generators.
std::string copy_prefix(int copy);

}  // namespace superkoszul
