#pragma once

#include "genlab/common/bigint.hpp"
#include "genlab/common/rng.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace genlab::oracle {

using u64 = std::uint64_t;

// Opaque element wire handle. The exponent behind it never crosses this interface.
struct Element {
    std::uint32_t id = 0;
    bool operator==(const Element&) const = default;
};

struct GroupInfo {
    bool known_order = true;
    u64 order = 0;  // 0 when hidden
    unsigned bit_length = 0;
};

// What a generic algorithm may do. Implemented by the live oracle, by the
// oracle-free replay used in decoding, and by the smooth / translated sessions.
class GroupApi {
public:
    virtual ~GroupApi() = default;

    virtual const GroupInfo& info() const = 0;
    virtual const std::vector<Element>& inputs() const = 0;

    virtual Element label(u64 value) = 0;
    virtual Element op(Element a, Element b, bool subtract) = 0;
    virtual bool equal(Element a, Element b) = 0;

    // Problem oracles; the base versions reject the call.
    virtual bool ddh(Element a, Element b, Element c);
    virtual std::optional<u64> dl(Element a);
    virtual Element challenge();

    // Element-gate accounting (labels + group operations).
    virtual u64 ops_used() const = 0;
    virtual u64 ops_budget() const = 0;
    // Used by games to append verification gates after the algorithm returns.
    virtual void lift_budget(u64 extra) = 0;

    u64 ops_left() const { return ops_budget() - ops_used(); }
};

// Passes every call through to another GroupApi; subclasses observe or restrict.
class ForwardingApi : public GroupApi {
public:
    explicit ForwardingApi(GroupApi& inner) : inner_(inner) {}

    const GroupInfo& info() const override { return inner_.info(); }
    const std::vector<Element>& inputs() const override { return inner_.inputs(); }
    Element label(u64 value) override { return inner_.label(value); }
    Element op(Element a, Element b, bool subtract) override { return inner_.op(a, b, subtract); }
    bool equal(Element a, Element b) override { return inner_.equal(a, b); }
    bool ddh(Element a, Element b, Element c) override { return inner_.ddh(a, b, c); }
    std::optional<u64> dl(Element a) override { return inner_.dl(a); }
    Element challenge() override { return inner_.challenge(); }
    u64 ops_used() const override { return inner_.ops_used(); }
    u64 ops_budget() const override { return inner_.ops_budget(); }
    void lift_budget(u64 extra) override { inner_.lift_budget(extra); }

protected:
    GroupApi& inner_;
};

struct AlgorithmOutput {
    bool failed = false;
    bool truncated = false;  // stopped by the element-gate budget
    std::vector<BigInt> values;
    std::vector<Element> elements;

    static AlgorithmOutput fail() {
        AlgorithmOutput o;
        o.failed = true;
        return o;
    }
    static AlgorithmOutput value(BigInt v) {
        AlgorithmOutput o;
        o.values.push_back(std::move(v));
        return o;
    }
};

using GenericAlgorithm = std::function<AlgorithmOutput(GroupApi&, Rng&)>;

// A full experiment body against some GroupApi: the algorithm plus any
// verification gates. Live runs and oracle-free replays execute the same Game.
using Game = std::function<AlgorithmOutput(GroupApi&)>;

// Runs alg with its "algorithm" sub-stream. Budget exhaustion yields a failed,
// truncated output instead of an exception.
AlgorithmOutput run_algorithm(const GenericAlgorithm& alg, GroupApi& api, std::uint64_t seed);

// x * a via double-and-add; uses about 2 log2(x) group operations.
Element scalar_mul(GroupApi& api, Element a, u64 x);

}  // namespace genlab::oracle
