#include "genlab/quantum/state.hpp"

#include "genlab/common/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace genlab::quantum {

const char* reg_kind_name(RegKind k) {
    switch (k) {
        case RegKind::Qubit: return "qubit";
        case RegKind::Qudit: return "qudit";
        case RegKind::Element: return "element";
        case RegKind::Ring: return "ring";
    }
    return "?";
}

RegKind parse_reg_kind(const std::string& s) {
    if (s == "qubit") return RegKind::Qubit;
    if (s == "qudit") return RegKind::Qudit;
    if (s == "element") return RegKind::Element;
    if (s == "ring") return RegKind::Ring;
    throw ConfigError("unknown register kind: " + s);
}

RegisterLayout::RegisterLayout(u64 modulus, std::size_t cap) : modulus_(modulus), cap_(cap) {
    require(modulus >= 1, "modulus must be positive");
    require(cap >= 1 && cap <= kDefaultCap, "amplitude cap must lie in [1, 2^22]");
}

std::size_t RegisterLayout::find(const std::string& name) const {
    for (std::size_t i = 0; i < regs_.size(); ++i)
        if (regs_[i].name == name) return i;
    throw ContractViolation("no register named " + name);
}

bool RegisterLayout::contains(const std::string& name) const {
    return std::any_of(regs_.begin(), regs_.end(), [&](const Register& r) { return r.name == name; });
}

std::size_t RegisterLayout::dim_of(RegKind kind, std::size_t qudit_dim) const {
    switch (kind) {
        case RegKind::Qubit: return 2;
        case RegKind::Qudit: return qudit_dim;
        default: return static_cast<std::size_t>(modulus_) + 1;
    }
}

std::size_t RegisterLayout::append(Register r) {
    require(!contains(r.name), "duplicate register name " + r.name);
    r.dim = dim_of(r.kind, r.dim);
    require(r.dim >= 1, "register dimension must be positive");
    if (total_ > cap_ / r.dim) throw ConfigError("dimension cap exceeded");
    regs_.push_back(std::move(r));
    rebuild();
    return regs_.size() - 1;
}

void RegisterLayout::erase(std::size_t i) {
    regs_.erase(regs_.begin() + static_cast<std::ptrdiff_t>(i));
    rebuild();
}

void RegisterLayout::reorder(const std::vector<std::size_t>& order) {
    std::vector<Register> next;
    for (auto i : order) next.push_back(regs_.at(i));
    regs_ = std::move(next);
    rebuild();
}

void RegisterLayout::rebuild() {
    strides_.assign(regs_.size(), 1);
    total_ = 1;
    for (std::size_t i = regs_.size(); i-- > 0;) {
        strides_[i] = total_;
        total_ *= regs_[i].dim;
    }
}

QState::QState(RegisterLayout layout) : layout_(std::move(layout)), amp_(layout_.total()) { amp_[0] = 1.0; }

std::size_t QState::index_of(const std::vector<std::size_t>& digits) const {
    require(digits.size() == layout_.size(), "one value per register expected");
    std::size_t idx = 0;
    for (std::size_t r = 0; r < digits.size(); ++r) {
        require(digits[r] < layout_[r].dim, "basis value out of range for " + layout_[r].name);
        idx += digits[r] * layout_.stride(r);
    }
    return idx;
}

void QState::set_basis(const std::vector<std::size_t>& digits) {
    std::size_t idx = index_of(digits);
    std::fill(amp_.begin(), amp_.end(), Amp{});
    amp_[idx] = 1.0;
}

std::size_t QState::append(Register r, std::size_t value) {
    std::size_t at = layout_.append(std::move(r));
    std::size_t d = layout_[at].dim;
    require(value < d, "initial value out of range");
    std::vector<Amp> next(layout_.total());
    for (std::size_t i = 0; i < amp_.size(); ++i) next[i * d + value] = amp_[i];
    amp_ = std::move(next);
    return at;
}

void QState::discard(std::size_t reg) {
    auto v = definite(reg);
    if (!v) throw ContractViolation("cannot discard entangled register " + layout_[reg].name);
    std::size_t stride = layout_.stride(reg), d = layout_[reg].dim;
    std::vector<Amp> next(amp_.size() / d);
    for (std::size_t j = 0; j < next.size(); ++j) {
        std::size_t hi = j / stride, lo = j % stride;
        next[j] = amp_[(hi * d + *v) * stride + lo];
    }
    layout_.erase(reg);
    amp_ = std::move(next);
}

void QState::reorder(const std::vector<std::size_t>& order) {
    require(order.size() == layout_.size(), "reorder needs a full permutation");
    RegisterLayout next_layout = layout_;
    next_layout.reorder(order);
    std::vector<Amp> next(amp_.size());
    for (std::size_t i = 0; i < amp_.size(); ++i) {
        std::size_t j = 0;
        for (std::size_t k = 0; k < order.size(); ++k) j += layout_.digit(i, order[k]) * next_layout.stride(k);
        next[j] = amp_[i];
    }
    layout_ = std::move(next_layout);
    amp_ = std::move(next);
}

void QState::reorder_by_name(const std::vector<std::string>& names) {
    std::vector<std::size_t> order;
    for (const auto& n : names) order.push_back(layout_.find(n));
    reorder(order);
}

double QState::norm() const {
    double s = 0;
    for (const auto& a : amp_) s += std::norm(a);
    return std::sqrt(s);
}

std::optional<std::size_t> QState::definite(std::size_t reg) const {
    std::optional<std::size_t> seen;
    for (std::size_t i = 0; i < amp_.size(); ++i) {
        if (std::norm(amp_[i]) < 1e-24) continue;
        std::size_t d = layout_.digit(i, reg);
        if (seen && *seen != d) return std::nullopt;
        seen = d;
    }
    return seen;
}

std::vector<double> QState::marginal(const std::vector<std::size_t>& regs) const {
    std::size_t total = 1;
    for (auto r : regs) total *= layout_[r].dim;
    std::vector<double> out(total, 0.0);
    for (std::size_t i = 0; i < amp_.size(); ++i) {
        std::size_t v = 0;
        for (auto r : regs) v = v * layout_[r].dim + layout_.digit(i, r);
        out[v] += std::norm(amp_[i]);
    }
    return out;
}

std::size_t QState::measure(const std::vector<std::size_t>& regs, Rng& rng) {
    auto probs = marginal(regs);
    double u = uniform_unit(rng) * std::accumulate(probs.begin(), probs.end(), 0.0);
    std::size_t outcome = probs.size() - 1;
    for (std::size_t v = 0; v < probs.size(); ++v) {
        if (u < probs[v]) {
            outcome = v;
            break;
        }
        u -= probs[v];
    }
    double keep = probs[outcome];
    require(keep > 0, "measured an outcome of probability zero");
    double scale = 1.0 / std::sqrt(keep);
    for (std::size_t i = 0; i < amp_.size(); ++i) {
        std::size_t v = 0;
        for (auto r : regs) v = v * layout_[r].dim + layout_.digit(i, r);
        amp_[i] = v == outcome ? amp_[i] * scale : Amp{};
    }
    return outcome;
}

void QState::permute(const std::function<std::size_t(std::size_t)>& f) {
    std::vector<Amp> next(amp_.size());
    for (std::size_t i = 0; i < amp_.size(); ++i) next[f(i)] = amp_[i];
    amp_ = std::move(next);
}

double max_deviation(const QState& a, const QState& b) {
    require(a.layout().size() == b.layout().size(), "states have different registers");
    QState bb = b;
    std::vector<std::string> names;
    for (const auto& r : a.layout().registers()) names.push_back(r.name);
    bb.reorder_by_name(names);
    require(bb.layout().total() == a.layout().total(), "states have different dimensions");
    double dev = 0;
    for (std::size_t i = 0; i < a.amplitudes().size(); ++i)
        dev = std::max(dev, std::abs(a.amplitudes()[i] - bb.amplitudes()[i]));
    return dev;
}

}  // namespace genlab::quantum
