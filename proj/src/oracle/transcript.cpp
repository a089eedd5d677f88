#include "genlab/oracle/transcript.hpp"

#include "genlab/common/error.hpp"

#include <json.hpp>

namespace genlab::oracle {

bool GroupApi::ddh(Element, Element, Element) { throw ContractViolation("ddh oracle not enabled for this session"); }
std::optional<u64> GroupApi::dl(Element) { throw ContractViolation("dl oracle not enabled for this session"); }
Element GroupApi::challenge() { throw ContractViolation("challenge oracle not enabled for this session"); }

Element scalar_mul(GroupApi& api, Element a, u64 x) {
    if (x == 0) return api.op(a, a, true);
    int top = 63;
    while (!((x >> top) & 1)) --top;
    Element acc = a;
    for (int i = top - 1; i >= 0; --i) {
        acc = api.op(acc, acc, false);
        if ((x >> i) & 1) acc = api.op(acc, a, false);
    }
    return acc;
}

const char* kind_name(GateKind k) {
    switch (k) {
        case GateKind::Input: return "input";
        case GateKind::Label: return "label";
        case GateKind::GroupOp: return "group_op";
        case GateKind::Equality: return "equality";
        case GateKind::Ddh: return "ddh";
        case GateKind::Dl: return "dl";
        case GateKind::Chal: return "chal";
        case GateKind::SmoothTest: return "smooth_test";
        case GateKind::Smoothing: return "smoothing";
    }
    return "?";
}

bool is_comparison(GateKind k) {
    return k == GateKind::Equality || k == GateKind::Ddh || k == GateKind::Dl || k == GateKind::Smoothing;
}

std::optional<std::size_t> Transcript::comparison_record(u64 ordinal) const {
    u64 seen = 0;
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (!is_comparison(records[i].kind)) continue;
        if (seen == ordinal) return i;
        ++seen;
    }
    return std::nullopt;
}

std::string record_json(const GateRecord& r) {
    nlohmann::ordered_json j;
    j["seq"] = r.seq;
    j["kind"] = kind_name(r.kind);
    j["inputs"] = r.inputs;
    j["sign"] = r.sign ? 1 : 0;
    j["output"] = r.output ? nlohmann::ordered_json(*r.output) : nlohmann::ordered_json(nullptr);
    if (r.kind == GateKind::Smoothing && !r.vec.empty())
        j["answer"] = r.vec;
    else
        j["answer"] = r.answer ? nlohmann::ordered_json(*r.answer) : nlohmann::ordered_json(nullptr);
    return j.dump();
}

void Transcript::write_jsonl(std::ostream& os) const {
    for (const auto& r : records) os << record_json(r) << '\n';
}

}  // namespace genlab::oracle
