#include "superkoszul/chart.hpp"

namespace superkoszul {

Chart::Chart(std::vector<Generator> gens) : gens_(std::move(gens)) {
    for (int i = 0; i < size(); ++i) {
        const auto& g = gens_[static_cast<size_t>(i)];
        if (!by_name_.emplace(g.name, i).second)
            throw Error("Chart: duplicate generator name '" + g.name + "'");
        if (g.role == Role::Base && g.copy == 0) ++base_count_;
    }
}

int Chart::index_of(const std::string& name) const {
    auto it = by_name_.find(name);
    if (it == by_name_.end()) throw Error("Chart: unknown generator '" + name + "'");
    return it->second;
}

std::optional<int> Chart::try_index_of(const std::string& name) const {
    auto it = by_name_.find(name);
    if (it == by_name_.end()) return std::nullopt;
    return it->second;
}

int Chart::find(Role role, int base_index, int copy) const {
    for (int i = 0; i < size(); ++i) {
        const auto& g = gens_[static_cast<size_t>(i)];
        if (g.role == role && g.base_index == base_index && g.copy == copy) return i;
    }
    return -1;
}

std::vector<int> Chart::indices(Role role, int copy) const {
    std::vector<int> out;
    for (int i = 0; i < size(); ++i) {
        const auto& g = gens_[static_cast<size_t>(i)];
        if (g.role == role && g.copy == copy) out.push_back(i);
    }
    return out;
}

bool Chart::same_as(const Chart& o) const {
    if (this == &o) return true;
    if (gens_.size() != o.gens_.size()) return false;
    for (size_t i = 0; i < gens_.size(); ++i) {
        const auto& a = gens_[i];
        const auto& b = o.gens_[i];
        if (a.name != b.name || a.parity != b.parity || a.role != b.role ||
            a.base_index != b.base_index || a.copy != b.copy)
            return false;
    }
    return true;
}

std::string copy_prefix(int copy) { return copy == 0 ? "" : "y_"; }

ChartBuilder& ChartBuilder::base(const std::string& name, Parity parity) {
    Generator g{name, parity, Role::Base, static_cast<int>(bases_.size()), 0};
    bases_.push_back(g);
    gens_.push_back(g);
    return *this;
}

ChartBuilder& ChartBuilder::with_antifibers(int copy) {
    for (const auto& b : bases_)
        gens_.push_back({copy_prefix(copy) + b.name + "s", (b.parity + 1) % 2,
                         Role::Antifiber, b.base_index, copy});
    return *this;
}

ChartBuilder& ChartBuilder::with_tangent_fibers(int copy) {
    for (const auto& b : bases_)
        gens_.push_back({copy_prefix(copy) + "d" + b.name, (b.parity + 1) % 2,
                         Role::TangentFiber, b.base_index, copy});
    return *this;
}

ChartBuilder& ChartBuilder::with_base_momenta(int copy) {
    for (const auto& b : bases_)
        gens_.push_back({copy_prefix(copy) + b.name + "_p", b.parity,
                         Role::BaseMomentum, b.base_index, copy});
    return *this;
}

ChartBuilder& ChartBuilder::with_antifiber_momenta(int copy) {
    for (const auto& b : bases_)
        gens_.push_back({copy_prefix(copy) + b.name + "s_p", (b.parity + 1) % 2,
                         Role::AntifiberMomentum, b.base_index, copy});
    return *this;
}

ChartBuilder& ChartBuilder::with_tangent_momenta(int copy) {
    for (const auto& b : bases_)
        gens_.push_back({copy_prefix(copy) + "d" + b.name + "_p", (b.parity + 1) % 2,
                         Role::TangentFiberMomentum, b.base_index, copy});
    return *this;
}

ChartBuilder& ChartBuilder::auxiliary(const std::string& name, Parity parity) {
    gens_.push_back({name, parity, Role::Auxiliary, -1, 0});
    return *this;
}

}  // namespace superkoszul
