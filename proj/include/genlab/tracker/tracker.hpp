#pragma once

#include "genlab/algebra/linpoly.hpp"
#include "genlab/algebra/span_basis.hpp"
#include "genlab/common/error.hpp"
#include "genlab/oracle/transcript.hpp"
#include "genlab/tracker/quadratic.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace genlab::tracker {

using algebra::LinPolyInt;
using algebra::LinPolyModN;
using algebra::u64;
using oracle::GateKind;
using oracle::GateRecord;
using oracle::Transcript;

enum class CollisionClass { Trivial, Predictable, Informative };
const char* class_name(CollisionClass c);

// Zero set over Z_N. Prime N keeps a row-echelon basis; composite N only
// recognizes identically-zero relations (anything else is reported informative
// and stored, but never used for prediction).
class ZeroSetModP {
public:
    using Poly = LinPolyModN;

    ZeroSetModP(u64 modulus, std::size_t nvars);

    bool identity_only() const { return !basis_.has_value(); }
    u64 modulus() const { return modulus_; }
    std::size_t nvars() const { return nvars_; }
    bool contains(const Poly& rel) const;
    void insert(const Poly& rel);
    std::size_t rank() const { return relations_.size(); }
    const std::vector<Poly>& relations() const { return relations_; }
    const algebra::SpanBasisModP& basis() const;

private:
    u64 modulus_;
    std::size_t nvars_;
    std::optional<algebra::SpanBasisModP> basis_;
    std::vector<Poly> relations_;
};

class ZeroSetZ {
public:
    using Poly = LinPolyInt;

    explicit ZeroSetZ(std::size_t nvars) : nvars_(nvars), basis_(nvars) {}

    std::size_t nvars() const { return nvars_; }
    bool contains(const Poly& rel) const { return rel.is_zero() || basis_.contains(rel); }
    void insert(const Poly& rel);
    std::size_t rank() const { return relations_.size(); }
    const std::vector<Poly>& relations() const { return relations_; }
    const algebra::SpanBasisZ& basis() const { return basis_; }

private:
    std::size_t nvars_;
    algebra::SpanBasisZ basis_;
    std::vector<Poly> relations_;
};

// Polynomial factories for the two tracking flavors.
struct ModDomain {
    using Poly = LinPolyModN;
    using ZeroSet = ZeroSetModP;
    u64 modulus;
    std::size_t nvars;
    u64 group_order = 0;  // when tracking modulo a factor of the order; 0 means modulus

    u64 label_bound() const { return group_order ? group_order : modulus; }
    Poly constant(u64 v) const { return Poly::constant(modulus, nvars, v % modulus); }
    Poly variable(std::size_t i) const { return Poly::variable(modulus, nvars, i); }
    Poly zero() const { return Poly::zero(modulus, nvars); }
    ZeroSet zero_set() const { return ZeroSet(modulus, nvars); }
};

struct IntDomain {
    using Poly = LinPolyInt;
    using ZeroSet = ZeroSetZ;
    std::size_t nvars;

    Poly constant(u64 v) const { return Poly::constant(nvars, BigInt(v)); }
    Poly variable(std::size_t i) const { return Poly::variable(nvars, i); }
    Poly zero() const { return Poly::zero(nvars); }
    ZeroSet zero_set() const { return ZeroSet(nvars); }
};

template <class Poly>
struct CollisionEvent {
    std::size_t record = 0;   // index into the transcript records
    u64 ordinal = 0;          // comparison ordinal
    GateKind kind = GateKind::Equality;
    CollisionClass cls = CollisionClass::Trivial;
    std::optional<Poly> relation;               // linear relation, when there is one
    std::optional<QuadPolyModN> quadratic;      // degree-2 ddh relation
    std::vector<std::uint32_t> wires;
};

// Polynomial list (one optional polynomial per wire; nullopt is ⊥) and zero set.
template <class Domain>
class Tracker {
public:
    using Poly = typename Domain::Poly;
    using ZeroSet = typename Domain::ZeroSet;
    using Event = CollisionEvent<Poly>;

    explicit Tracker(Domain d) : dom_(d), zs_(d.zero_set()) {}

    const Domain& domain() const { return dom_; }
    const ZeroSet& zero_set() const { return zs_; }
    const std::vector<std::optional<Poly>>& polys() const { return polys_; }
    const std::vector<Event>& events() const { return events_; }
    u64 comparisons() const { return comparisons_; }
    std::size_t factor_base_offset = 0;

    const std::optional<Poly>& poly(std::uint32_t id) const {
        require(id < polys_.size(), "tracker: unknown wire id");
        return polys_[id];
    }

    std::uint32_t push_wire(std::optional<Poly> p) {
        polys_.push_back(std::move(p));
        return static_cast<std::uint32_t>(polys_.size() - 1);
    }

    std::uint32_t push_op(std::uint32_t a, std::uint32_t b, bool subtract) {
        const auto& pa = poly(a);
        const auto& pb = poly(b);
        if (pa && pb) return push_wire(pa->combine(*pb, subtract));
        return push_wire(std::nullopt);
    }

    // Would the relation be answered 1 without new information?
    bool predicted(const Poly& rel) const { return rel.is_zero() || zs_.contains(rel); }

    CollisionClass classify(const Poly& rel) {
        if (rel.is_zero()) return CollisionClass::Trivial;
        if (zs_.contains(rel)) return CollisionClass::Predictable;
        zs_.insert(rel);
        return CollisionClass::Informative;
    }

    // Registers a comparison gate answered 1 (or a dl answer). Returns the event.
    const Event& record_linear(std::size_t record, GateKind kind, const Poly& rel, std::vector<std::uint32_t> wires) {
        Event e;
        e.record = record;
        e.ordinal = comparisons_ - 1;
        e.kind = kind;
        e.cls = classify(rel);
        e.relation = rel;
        e.wires = std::move(wires);
        events_.push_back(std::move(e));
        return events_.back();
    }

    void count_comparison() { ++comparisons_; }

    // Processes one live transcript record.
    void track(const GateRecord& r, std::size_t index);

    std::size_t informative_count() const {
        std::size_t n = 0;
        for (const auto& e : events_) n += e.cls == CollisionClass::Informative;
        return n;
    }

    // Max |coefficient| across all tracked polynomials (integer mode statistic).
    BigInt max_coefficient() const;

    // Mod-domain ddh handling is shared with the replay session.
    std::optional<QuadPolyModN> ddh_relation(std::uint32_t a, std::uint32_t b, std::uint32_t c) const;

private:
    Domain dom_;
    ZeroSet zs_;
    std::vector<std::optional<Poly>> polys_;
    std::vector<Event> events_;
    u64 comparisons_ = 0;
};

template <class Domain>
Tracker<Domain> track_transcript(const Transcript& t, Domain d) {
    Tracker<Domain> tr(d);
    tr.factor_base_offset = t.factor_base_offset;
    for (std::size_t i = 0; i < t.records.size(); ++i) tr.track(t.records[i], i);
    return tr;
}

// First `count` informative events, in transcript order.
template <class Poly>
std::vector<const CollisionEvent<Poly>*> informative_events(const std::vector<CollisionEvent<Poly>>& events,
                                                            std::size_t count = SIZE_MAX) {
    std::vector<const CollisionEvent<Poly>*> out;
    for (const auto& e : events) {
        if (out.size() >= count) break;
        if (e.cls == CollisionClass::Informative) out.push_back(&e);
    }
    return out;
}

// Unique assignment annihilating the m informative rows (m = variable count).
std::vector<u64> solve_mdl(const ZeroSetModP& zs, std::size_t m, u64 p);

// Variables (1-based) outside the pivot columns of the zero set's reduced basis.
std::vector<std::size_t> reveal_indices(const ZeroSetModP& zs, std::size_t total_vars);

extern template class Tracker<ModDomain>;
extern template class Tracker<IntDomain>;

}  // namespace genlab::tracker
