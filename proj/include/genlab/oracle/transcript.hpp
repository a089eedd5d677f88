#pragma once

#include "genlab/oracle/group_api.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace genlab::oracle {

enum class GateKind { Input, Label, GroupOp, Equality, Ddh, Dl, Chal, SmoothTest, Smoothing };

const char* kind_name(GateKind k);
bool is_comparison(GateKind k);  // gates whose answer can carry a relation

struct GateRecord {
    u64 seq = 0;
    GateKind kind = GateKind::Input;
    std::vector<std::uint32_t> inputs;
    bool sign = false;
    std::optional<std::uint32_t> output;
    // Label / constant input: the public value. Equality, Ddh, SmoothTest: 0/1.
    // Dl: returned exponent (absent when refused). Smoothing: 1 when smooth.
    std::optional<std::int64_t> answer;
    int variable = 0;         // Input / Chal: 1-based variable index, 0 for a constant
    std::vector<u64> vec;     // Smoothing: exponent vector
};

struct Tallies {
    u64 inputs = 0, labels = 0, group_ops = 0, equalities = 0, ddh = 0, dl = 0, chal = 0, smooth_tests = 0,
        smoothings = 0;

    u64 element_ops() const { return labels + group_ops; }
    u64 wires() const { return inputs + labels + group_ops + chal; }
    u64 comparisons() const { return equalities + ddh + dl + smoothings; }
};

struct Transcript {
    std::string description;
    std::size_t nvars = 0;
    std::size_t factor_base_offset = 0;  // first factor-base variable (smooth sessions)
    std::vector<GateRecord> records;
    Tallies tallies;
    AlgorithmOutput output;
    bool truncated = false;
    bool invalid = false;

    // Index of the comparison gate with the given ordinal, or nullopt.
    std::optional<std::size_t> comparison_record(u64 ordinal) const;

    void write_jsonl(std::ostream& os) const;
};

std::string record_json(const GateRecord& r);

}  // namespace genlab::oracle
