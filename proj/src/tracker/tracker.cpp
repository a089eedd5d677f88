#include "genlab/tracker/tracker.hpp"

#include <type_traits>

namespace genlab::tracker {

const char* class_name(CollisionClass c) {
    switch (c) {
        case CollisionClass::Trivial: return "trivial";
        case CollisionClass::Predictable: return "predictable";
        case CollisionClass::Informative: return "informative";
    }
    return "?";
}

ZeroSetModP::ZeroSetModP(u64 modulus, std::size_t nvars) : modulus_(modulus), nvars_(nvars) {
    if (algebra::is_prime_u64(modulus)) basis_.emplace(modulus, nvars);
}

bool ZeroSetModP::contains(const Poly& rel) const {
    if (rel.is_zero()) return true;
    if (!basis_) return false;
    return basis_->contains(rel);
}

void ZeroSetModP::insert(const Poly& rel) {
    if (basis_) require(basis_->insert(rel), "zero set: inserted relation was already in the span");
    relations_.push_back(rel);
}

const algebra::SpanBasisModP& ZeroSetModP::basis() const {
    require(basis_.has_value(), "zero set: no basis for a composite modulus");
    return *basis_;
}

void ZeroSetZ::insert(const Poly& rel) {
    require(basis_.insert(rel), "zero set: inserted relation was already in the span");
    relations_.push_back(rel);
}

template <class Domain>
std::optional<QuadPolyModN> Tracker<Domain>::ddh_relation(std::uint32_t a, std::uint32_t b, std::uint32_t c) const {
    if constexpr (std::is_same_v<Domain, ModDomain>) {
        const auto& pa = poly(a);
        const auto& pb = poly(b);
        const auto& pc = poly(c);
        if (!pa || !pb || !pc) return std::nullopt;
        return QuadPolyModN::ddh_relation(*pa, *pb, *pc);
    } else {
        (void)a;
        (void)b;
        (void)c;
        throw ContractViolation("ddh relations are only tracked modulo a known order");
    }
}

template <class Domain>
void Tracker<Domain>::track(const GateRecord& r, std::size_t index) {
    switch (r.kind) {
        case GateKind::Input:
            if (r.variable > 0)
                push_wire(dom_.variable(static_cast<std::size_t>(r.variable)));
            else
                push_wire(dom_.constant(static_cast<u64>(*r.answer)));
            break;
        case GateKind::Label: {
            u64 v = static_cast<u64>(*r.answer);
            if constexpr (std::is_same_v<Domain, ModDomain>) {
                if (v >= dom_.label_bound()) {
                    push_wire(std::nullopt);
                    break;
                }
            }
            push_wire(dom_.constant(v));
            break;
        }
        case GateKind::GroupOp:
            push_op(r.inputs.at(0), r.inputs.at(1), r.sign);
            break;
        case GateKind::Chal:
            push_wire(dom_.variable(static_cast<std::size_t>(r.variable)));
            break;
        case GateKind::Equality: {
            count_comparison();
            if (r.answer.value_or(0) != 1) break;
            const auto& pa = poly(r.inputs.at(0));
            const auto& pb = poly(r.inputs.at(1));
            require(pa && pb, "tracker: equality answered 1 on an invalid wire");
            record_linear(index, GateKind::Equality, *pa - *pb, r.inputs);
            break;
        }
        case GateKind::Ddh: {
            count_comparison();
            if (r.answer.value_or(0) != 1) break;
            if constexpr (std::is_same_v<Domain, ModDomain>) {
                auto q = ddh_relation(r.inputs.at(0), r.inputs.at(1), r.inputs.at(2));
                require(q.has_value(), "tracker: ddh answered 1 on an invalid wire");
                if (q->is_linear()) {
                    record_linear(index, GateKind::Ddh, q->linear_part(), r.inputs);
                } else {
                    Event e;
                    e.record = index;
                    e.ordinal = comparisons_ - 1;
                    e.kind = GateKind::Ddh;
                    e.cls = CollisionClass::Informative;
                    e.quadratic = *q;
                    e.wires = r.inputs;
                    events_.push_back(std::move(e));
                }
            }
            break;
        }
        case GateKind::Dl: {
            count_comparison();
            if (!r.answer) break;
            const auto& pa = poly(r.inputs.at(0));
            require(pa.has_value(), "tracker: dl answered on an invalid wire");
            record_linear(index, GateKind::Dl, *pa - dom_.constant(static_cast<u64>(*r.answer)), r.inputs);
            break;
        }
        case GateKind::SmoothTest:
            break;
        case GateKind::Smoothing: {
            count_comparison();
            if (r.answer.value_or(0) != 1) break;
            if constexpr (std::is_same_v<Domain, ModDomain>) {
                const auto& pa = poly(r.inputs.at(0));
                require(pa.has_value(), "tracker: smoothing answered on an invalid wire");
                auto rel = *pa;
                for (std::size_t i = 0; i < r.vec.size(); ++i) {
                    if (!r.vec[i]) continue;
                    rel = rel - dom_.variable(factor_base_offset + i).scaled(r.vec[i]);
                }
                record_linear(index, GateKind::Smoothing, rel, r.inputs);
            }
            break;
        }
    }
}

template <class Domain>
BigInt Tracker<Domain>::max_coefficient() const {
    BigInt m = 0;
    for (const auto& p : polys_) {
        if (!p) continue;
        if constexpr (std::is_same_v<Domain, IntDomain>) {
            BigInt a = p->max_abs();
            if (a > m) m = a;
        } else {
            for (u64 c : p->coeffs())
                if (BigInt(c) > m) m = c;
        }
    }
    return m;
}

template class Tracker<ModDomain>;
template class Tracker<IntDomain>;

std::vector<u64> solve_mdl(const ZeroSetModP& zs, std::size_t m, u64 p) {
    require(!zs.identity_only() && zs.modulus() == p, "solve_mdl: needs a prime-modulus zero set");
    require(zs.nvars() == m, "solve_mdl: variable count mismatch");
    if (zs.rank() != m) throw NotInformative("solve_mdl: rank deficient zero set");
    return algebra::solve_square_system_mod(zs.relations(), p);
}

std::vector<std::size_t> reveal_indices(const ZeroSetModP& zs, std::size_t total_vars) {
    require(!zs.identity_only(), "reveal_indices: needs a prime-modulus zero set");
    require(zs.nvars() == total_vars, "reveal_indices: variable count mismatch");
    require(zs.rank() <= total_vars, "reveal_indices: more relations than variables");
    return zs.basis().free_variables();
}

}  // namespace genlab::tracker
