#include "genlab/quantum/program.hpp"

#include "genlab/algebra/modular.hpp"
#include "genlab/common/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <map>

namespace genlab::quantum {

using json = nlohmann::ordered_json;

void Program::reg(std::string name, RegKind kind, std::size_t init, std::size_t dim) {
    registers.push_back({std::move(name), kind, dim, init});
}

void Program::h(std::string q) {
    Instruction in;
    in.kind = Instr::H;
    in.targets = {std::move(q)};
    gates.push_back(std::move(in));
}

void Program::x(std::string q) {
    Instruction in;
    in.kind = Instr::X;
    in.targets = {std::move(q)};
    gates.push_back(std::move(in));
}

void Program::qft(std::vector<std::string> qs, bool inverse) {
    Instruction in;
    in.kind = inverse ? Instr::Iqft : Instr::Qft;
    in.targets = std::move(qs);
    gates.push_back(std::move(in));
}

static Instr element_instr(ElementGate g) {
    switch (g) {
        case ElementGate::Op: return Instr::Op;
        case ElementGate::Inv: return Instr::Inv;
        case ElementGate::Eq: return Instr::Eq;
    }
    return Instr::Op;
}

static Instr ring_instr(RingGate g) {
    switch (g) {
        case RingGate::Add: return Instr::Add;
        case RingGate::Sub: return Instr::Sub;
        case RingGate::ProdAdd: return Instr::ProdAdd;
        case RingGate::TestInv: return Instr::TestInv;
        case RingGate::InvAdd: return Instr::InvAdd;
        case RingGate::Eq: return Instr::RingEq;
    }
    return Instr::Add;
}

void Program::element(ElementGate g, std::string b, std::string x, std::string y) {
    Instruction in;
    in.kind = element_instr(g);
    in.control = std::move(b);
    in.x = std::move(x);
    in.y = std::move(y);
    gates.push_back(std::move(in));
}

void Program::element_tw(ElementGate g, std::string b, std::string t, std::string w, std::vector<std::string> xs,
                         std::vector<std::string> ys) {
    Instruction in;
    in.kind = element_instr(g);
    in.control = std::move(b);
    in.t = std::move(t);
    in.w = std::move(w);
    in.xs = std::move(xs);
    in.ys = std::move(ys);
    gates.push_back(std::move(in));
}

void Program::ring(RingGate g, std::string b, std::string x, std::string y, std::string z) {
    Instruction in;
    in.kind = ring_instr(g);
    in.control = std::move(b);
    in.x = std::move(x);
    in.y = std::move(y);
    in.z = std::move(z);
    gates.push_back(std::move(in));
}

void Program::label(std::string name, std::size_t value) {
    Instruction in;
    in.kind = Instr::Label;
    in.name = std::move(name);
    in.value = value;
    in.from_value = true;
    gates.push_back(std::move(in));
}

void Program::alloc(std::string name, std::size_t value) {
    Instruction in;
    in.kind = Instr::Alloc;
    in.name = std::move(name);
    in.value = value;
    gates.push_back(std::move(in));
}

void Program::discard(std::string name) {
    Instruction in;
    in.kind = Instr::Discard;
    in.name = std::move(name);
    gates.push_back(std::move(in));
}

namespace {

const std::map<std::string, Instr>& instr_names() {
    static const std::map<std::string, Instr> m{
        {"h", Instr::H},           {"x", Instr::X},           {"qft", Instr::Qft},         {"iqft", Instr::Iqft},
        {"op", Instr::Op},         {"inv", Instr::Inv},       {"eq", Instr::Eq},           {"add", Instr::Add},
        {"sub", Instr::Sub},       {"prodadd", Instr::ProdAdd}, {"testinv", Instr::TestInv}, {"invadd", Instr::InvAdd},
        {"ring-eq", Instr::RingEq}, {"label", Instr::Label},   {"alloc", Instr::Alloc},     {"discard", Instr::Discard},
        {"measure", Instr::Measure},
    };
    return m;
}

std::string instr_name(Instr k) {
    for (const auto& [n, v] : instr_names())
        if (v == k) return n;
    return "?";
}

bool is_element(Instr k) { return k == Instr::Op || k == Instr::Inv || k == Instr::Eq; }
bool is_ring(Instr k) {
    return k == Instr::Add || k == Instr::Sub || k == Instr::ProdAdd || k == Instr::TestInv || k == Instr::InvAdd ||
           k == Instr::RingEq;
}

RegKind model_kind(const Program& p) { return p.model == "ring" ? RegKind::Ring : RegKind::Element; }

std::string str_or(const json& j, const char* key) { return j.contains(key) ? j.at(key).get<std::string>() : ""; }

std::vector<std::string> list_or(const json& j, const char* key) {
    return j.contains(key) ? j.at(key).get<std::vector<std::string>>() : std::vector<std::string>{};
}

}  // namespace

Program program_from_json(const std::string& text) {
    Program p;
    json j;
    try {
        j = json::parse(text);
        p.model = j.value("model", std::string("group"));
        if (p.model != "group" && p.model != "ring") throw ConfigError("model must be group or ring");
        p.modulus = j.at("modulus").get<u64>();
        p.cap = j.value("cap", kDefaultCap);
        for (const auto& r : j.at("registers")) {
            RegisterDecl d;
            d.name = r.at("name").get<std::string>();
            d.kind = parse_reg_kind(r.at("kind").get<std::string>());
            d.dim = r.value("dim", std::size_t{0});
            d.init = r.value("init", std::size_t{0});
            p.registers.push_back(d);
        }
        for (const auto& g : j.at("gates")) {
            std::string name = g.at("gate").get<std::string>();
            auto it = instr_names().find(name);
            if (it == instr_names().end()) throw ConfigError("unknown gate: " + name);
            Instruction in;
            in.kind = it->second;
            if (p.model == "ring" && in.kind == Instr::Eq) in.kind = Instr::RingEq;
            in.targets = list_or(g, in.kind == Instr::Label ? "qubits" : "targets");
            in.control = str_or(g, in.kind == Instr::TestInv ? "target" : "control");
            in.x = str_or(g, "x");
            in.y = str_or(g, "y");
            in.z = str_or(g, "z");
            in.t = str_or(g, "t");
            in.w = str_or(g, "w");
            in.xs = list_or(g, "xs");
            in.ys = list_or(g, "ys");
            in.name = str_or(g, "name");
            in.reg_kind = model_kind(p);
            if (g.contains("value")) {
                in.value = g.at("value").get<std::size_t>();
                in.from_value = true;
            }
            p.gates.push_back(std::move(in));
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("program json: ") + e.what());
    }
    return p;
}

std::string program_to_json(const Program& p) {
    json j;
    j["model"] = p.model;
    j["modulus"] = p.modulus;
    j["cap"] = p.cap;
    j["registers"] = json::array();
    for (const auto& r : p.registers) {
        json e{{"name", r.name}, {"kind", reg_kind_name(r.kind)}};
        if (r.kind == RegKind::Qudit) e["dim"] = r.dim;
        e["init"] = r.init;
        j["registers"].push_back(e);
    }
    j["gates"] = json::array();
    for (const auto& in : p.gates) {
        json g;
        g["gate"] = in.kind == Instr::RingEq && p.model == "ring" ? "eq" : instr_name(in.kind);
        if (!in.targets.empty()) g[in.kind == Instr::Label ? "qubits" : "targets"] = in.targets;
        if (!in.control.empty()) g[in.kind == Instr::TestInv ? "target" : "control"] = in.control;
        if (!in.x.empty()) g["x"] = in.x;
        if (!in.y.empty()) g["y"] = in.y;
        if (!in.z.empty()) g["z"] = in.z;
        if (!in.t.empty()) g["t"] = in.t;
        if (!in.w.empty()) g["w"] = in.w;
        if (!in.xs.empty()) g["xs"] = in.xs;
        if (!in.ys.empty()) g["ys"] = in.ys;
        if (!in.name.empty()) g["name"] = in.name;
        if (in.from_value || in.kind == Instr::Alloc) g["value"] = in.value;
        j["gates"].push_back(g);
    }
    return j.dump(2);
}

bool DelegationTally::communication_ok(double log2_messages, double eps) const {
    if (eps <= 0) return true;
    return 2.0 * log2_dims >= log2_messages + std::log2(eps);
}

QState initial_state(const Program& p) {
    require(p.modulus >= 1, "program needs a modulus");
    RegisterLayout L(p.modulus, p.cap);
    std::vector<std::size_t> digits;
    for (const auto& r : p.registers) {
        L.append(Register{r.name, r.kind, r.dim});
        digits.push_back(r.init);
    }
    QState s(L);
    s.set_basis(digits);
    return s;
}

namespace {

bool alice_kind(RegKind k) { return k == RegKind::Element || k == RegKind::Ring; }

void push_unique(std::vector<std::string>& v, const std::string& n) {
    if (!n.empty() && std::find(v.begin(), v.end(), n) == v.end()) v.push_back(n);
}

// Registers an element or ring instruction touches; the first entries are Bob's.
std::vector<std::string> operands_of(const Instruction& in) {
    std::vector<std::string> out;
    push_unique(out, in.control);
    push_unique(out, in.t);
    push_unique(out, in.w);
    push_unique(out, in.x);
    push_unique(out, in.y);
    push_unique(out, in.z);
    for (const auto& n : in.xs) push_unique(out, n);
    for (const auto& n : in.ys) push_unique(out, n);
    return out;
}

RingGate ring_of(Instr k) {
    switch (k) {
        case Instr::Add: return RingGate::Add;
        case Instr::Sub: return RingGate::Sub;
        case Instr::ProdAdd: return RingGate::ProdAdd;
        case Instr::TestInv: return RingGate::TestInv;
        case Instr::InvAdd: return RingGate::InvAdd;
        default: return RingGate::Eq;
    }
}

ElementGate element_of(Instr k) {
    return k == Instr::Op ? ElementGate::Op : k == Instr::Inv ? ElementGate::Inv : ElementGate::Eq;
}

void apply_named(QState& s, const Instruction& in) {
    auto r = [&](const std::string& n) { return s.reg(n); };
    if (is_element(in.kind)) {
        if (!in.t.empty() || !in.w.empty()) {
            std::vector<std::size_t> xs, ys;
            for (const auto& n : in.xs) xs.push_back(r(n));
            for (const auto& n : in.ys) ys.push_back(r(n));
            apply_element_gate_tw(s, element_of(in.kind), r(in.control), r(in.t), r(in.w), xs, ys);
        } else {
            apply_element_gate(s, element_of(in.kind), r(in.control), r(in.x), r(in.y));
        }
        return;
    }
    RingGate g = ring_of(in.kind);
    RingOperands ro;
    ro.b = r(in.control);
    ro.x = r(in.x);
    if (g != RingGate::TestInv) ro.y = r(in.y);
    if (g == RingGate::ProdAdd || g == RingGate::InvAdd) ro.z = r(in.z);
    apply_ring_gate(s, g, ro);
}

// Element and ring registers in a definite basis state are a product factor of
// the state; they are held as plain values and only enter the amplitude vector
// while a quantum gate needs them.
class Runner {
public:
    Runner(const Program& p, RunMode mode, Rng& rng) : p_(p), mode_(mode), rng_(rng), res_{make_state(p), {}, {}, {}} {
        for (const auto& d : p.registers) {
            created_.push_back(d.name);
            if (alice_kind(d.kind)) {
                require(d.init <= p.modulus, "initial value out of range for " + d.name);
                held_[d.name] = {d.kind, d.init};
            }
        }
        canonical();
    }

    RunResult run() {
        for (const auto& in : p_.gates) {
            step(in);
            double n = res_.state.norm();
            if (std::abs(n - 1.0) > 1e-10) throw ContractViolation("state norm drifted after " + instr_name(in.kind));
        }
        for (const auto& n : created_) {
            auto it = held_.find(n);
            if (it != held_.end()) res_.held.emplace_back(n, it->second.value);
        }
        return std::move(res_);
    }

private:
    struct Held {
        RegKind kind;
        std::size_t value;
    };

    static QState make_state(const Program& p) {
        require(p.modulus >= 1, "program needs a modulus");
        RegisterLayout L(p.modulus, p.cap);
        std::vector<std::size_t> digits;
        std::map<std::string, int> seen;
        for (const auto& r : p.registers) {
            require(seen[r.name]++ == 0, "duplicate register name " + r.name);
            if (alice_kind(r.kind)) continue;
            L.append(Register{r.name, r.kind, r.dim});
            digits.push_back(r.init);
        }
        QState s(L);
        s.set_basis(digits);
        return s;
    }

    QState& s() { return res_.state; }
    std::size_t r(const std::string& name) { return s().reg(name); }

    std::vector<std::size_t> regs(const std::vector<std::string>& names) {
        std::vector<std::size_t> out;
        for (const auto& n : names) out.push_back(r(n));
        return out;
    }

    void add_held(const std::string& name, RegKind kind, std::size_t value) {
        require(!held_.count(name) && !s().layout().contains(name), "duplicate register name " + name);
        held_[name] = {kind, value};
        created_.push_back(name);
    }

    std::optional<std::size_t> value_of(const std::string& name) {
        auto it = held_.find(name);
        if (it != held_.end()) return it->second.value;
        return s().definite(r(name));
    }

    void unpark(const std::vector<std::string>& names) {
        for (const auto& n : names) {
            auto it = held_.find(n);
            if (it == held_.end()) continue;
            s().append(Register{n, it->second.kind, 0}, it->second.value);
            held_.erase(it);
        }
        canonical();
    }

    void park_definite() {
        for (const auto& n : created_) {
            if (!s().layout().contains(n)) continue;
            std::size_t i = r(n);
            if (!alice_kind(s().layout()[i].kind)) continue;
            if (auto v = s().definite(i)) {
                held_[n] = {s().layout()[i].kind, *v};
                s().discard(i);
            }
        }
    }

    // Delegated layout: Alice's registers first, then Bob's, each in creation order.
    void canonical() {
        if (mode_ != RunMode::Delegated) return;
        const auto& L = s().layout();
        std::vector<std::size_t> order;
        for (bool alice : {true, false})
            for (const auto& n : created_) {
                if (!L.contains(n)) continue;
                std::size_t i = L.find(n);
                if (alice_kind(L[i].kind) == alice) order.push_back(i);
            }
        s().reorder(order);
    }

    // Bob hands the named registers to Alice: they move into her block.
    void ship(const std::vector<std::string>& names) {
        if (mode_ != RunMode::Delegated) return;
        const auto& L = s().layout();
        std::vector<std::size_t> order;
        for (std::size_t i = 0; i < L.size(); ++i)
            if (alice_kind(L[i].kind)) order.push_back(i);
        for (const auto& n : names) order.push_back(L.find(n));
        for (std::size_t i = 0; i < L.size(); ++i)
            if (!alice_kind(L[i].kind) && std::find(names.begin(), names.end(), L[i].name) == names.end())
                order.push_back(i);
        s().reorder(order);
    }

    // Sets a definite qubit or qudit register to a new value.
    void relabel(std::size_t reg, std::size_t from, std::size_t to) {
        if (from == to) return;
        const auto L = s().layout();
        std::size_t stride = L.stride(reg);
        s().permute([&](std::size_t i) {
            std::size_t d = L.digit(i, reg);
            if (d == from) return i + (to - from) * stride;
            if (d == to) return i - (to - from) * stride;
            return i;
        });
    }

    void charge(bool classical, std::size_t t, std::size_t w, bool equality) {
        auto& T = res_.tally;
        if (classical) {
            ++T.classical_gates;
            T.classical_bits += 1 + algebra::ceil_log2(t) + algebra::ceil_log2(w) + (equality ? 1 : 0);
            return;
        }
        ++T.quantum_gates;
        if (equality) ++T.quantum_equalities;
        u64 q = algebra::ceil_log2(2 * t * w);
        T.qubits_to_alice += q;
        T.qubits_to_bob += q;
        T.log2_dims += std::log2(static_cast<double>(2 * t * w));
    }

    void gate(const Instruction& in) {
        auto ops = operands_of(in);
        std::vector<std::string> bob{in.control};
        if (!in.t.empty()) bob.push_back(in.t);
        if (!in.w.empty()) bob.push_back(in.w);
        for (const auto& n : ops)
            if (!held_.count(n) && !s().layout().contains(n)) throw ContractViolation("no register named " + n);

        std::vector<std::optional<std::size_t>> values;
        bool classical = true;
        for (const auto& n : ops) {
            values.push_back(value_of(n));
            classical &= values.back().has_value();
        }
        std::size_t t = in.xs.empty() ? 1 : in.xs.size(), w = in.ys.empty() ? 1 : in.ys.size();
        bool equality = in.kind == Instr::Eq || in.kind == Instr::RingEq || in.kind == Instr::TestInv;
        charge(classical, t, w, equality);

        if (classical) {
            RegisterLayout L(p_.modulus);
            for (const auto& n : ops) {
                bool held = held_.count(n) > 0;
                const Register& src = held ? Register{n, held_[n].kind, 0} : s().layout()[r(n)];
                L.append(Register{n, src.kind, src.kind == RegKind::Qudit ? src.dim : 0});
            }
            QState mini(L);
            std::vector<std::size_t> digits;
            for (const auto& v : values) digits.push_back(*v);
            mini.set_basis(digits);
            apply_named(mini, in);
            for (std::size_t k = 0; k < ops.size(); ++k) {
                std::size_t now = *mini.definite(k);
                auto it = held_.find(ops[k]);
                if (it != held_.end())
                    it->second.value = now;
                else
                    relabel(r(ops[k]), *values[k], now);
            }
            return;
        }
        unpark(ops);
        ship(bob);
        apply_named(s(), in);
        canonical();
        park_definite();
    }

    void step(const Instruction& in) {
        switch (in.kind) {
            case Instr::H:
                for (auto q : regs(in.targets)) hadamard(s(), q);
                return;
            case Instr::X:
                for (auto q : regs(in.targets)) pauli_x(s(), q);
                return;
            case Instr::Qft:
            case Instr::Iqft:
                qft(s(), regs(in.targets), in.kind == Instr::Iqft);
                return;
            case Instr::Measure:
                res_.measurements.push_back(s().measure(regs(in.targets), rng_));
                return;
            case Instr::Label: {
                u64 N = p_.modulus;
                std::size_t v = in.value;
                if (in.from_value) {
                    res_.tally.classical_bits += algebra::ceil_log2(N);
                } else {
                    for (auto q : regs(in.targets)) require(s().layout()[q].kind == RegKind::Qubit, "label reads qubits");
                    v = in.targets.empty() ? 0 : s().measure(regs(in.targets), rng_);
                    res_.tally.classical_bits += in.targets.size();
                }
                res_.measurements.push_back(v);
                add_held(in.name, model_kind(p_), v >= N ? N : v);
                return;
            }
            case Instr::Alloc:
                require(in.value < p_.modulus, "alloc value out of range");
                add_held(in.name, model_kind(p_), in.value);
                return;
            case Instr::Discard:
                if (held_.count(in.name))
                    held_.erase(in.name);
                else
                    s().discard(r(in.name));
                created_.erase(std::find(created_.begin(), created_.end(), in.name));
                return;
            default: break;
        }
        if (is_element(in.kind) || is_ring(in.kind)) return gate(in);
        throw ContractViolation("unhandled instruction");
    }

    const Program& p_;
    RunMode mode_;
    Rng& rng_;
    RunResult res_;
    std::vector<std::string> created_;
    std::map<std::string, Held> held_;
};

}  // namespace

RunResult run_program(const Program& p, RunMode mode, Rng& rng) { return Runner(p, mode, rng).run(); }

}  // namespace genlab::quantum
