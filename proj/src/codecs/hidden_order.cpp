#include "genlab/codecs/codec.hpp"

#include "genlab/algebra/factor.hpp"
#include "genlab/algebra/modular.hpp"
#include "genlab/common/error.hpp"
#include "genlab/tracker/replay.hpp"
#include "genlab/tracker/tracker.hpp"

#include <algorithm>

namespace genlab::codecs {

using oracle::AlgorithmOutput;
using oracle::Element;
using oracle::GroupApi;
using oracle::InputSpec;
using tracker::Directive;
using tracker::IntDomain;
using tracker::ReplayPlan;

const char* hidden_game_name(HiddenGame g) {
    switch (g) {
        case HiddenGame::OrderFind: return "order-find";
        case HiddenGame::RootExtraction: return "root-extraction";
        case HiddenGame::RepeatedSquaring: return "repeated-squaring";
    }
    return "?";
}

std::vector<u64> nbit_primes(unsigned n) {
    require(n >= 2 && n <= 24, "nbit_primes: bit length out of range");
    std::vector<u64> out;
    for (u64 v = u64(1) << (n - 1); v < (u64(1) << n); ++v)
        if (algebra::is_prime_u64(v)) out.push_back(v);
    return out;
}

namespace {

constexpr unsigned kRootExponentBits = 16;

// Digits: Order (ordinal, divisor index); Rsa (ordinal, index of p, index of q);
// RsaTwo (rank of two ordinals or, past the pair ranks, one ordinal; a factor index into each).
class HiddenOrderCodec : public Codec {
public:
    explicit HiddenOrderCodec(HiddenOrderConfig cfg)
        : Codec(cfg.variant, cfg.name, cfg.T), cfg_(std::move(cfg)), primes_(nbit_primes(cfg_.n)) {
        require(cfg_.variant == CodecKind::Order || cfg_.variant == CodecKind::Rsa || cfg_.variant == CodecKind::RsaTwo,
                "hidden-order codec: unsupported variant");
        require(cfg_.game != HiddenGame::RepeatedSquaring || cfg_.squarings >= 1, "repeated squaring needs t >= 1");
        rsa_ = cfg_.variant != CodecKind::Order;
        bits_ = rsa_ ? 2 * cfg_.n : cfg_.n;
        switch (cfg_.game) {
            case HiddenGame::OrderFind: check_ops_ = 2 * u64(bits_) + 1; break;
            case HiddenGame::RootExtraction: check_ops_ = 2 * u64(kRootExponentBits); break;
            case HiddenGame::RepeatedSquaring: check_ops_ = cfg_.squarings; break;
        }
        nvars_ = cfg_.game == HiddenGame::RootExtraction ? 1 : 0;
    }

    std::string group_label() const override {
        return std::string(rsa_ ? "rsa" : "prime") + "-" + std::to_string(cfg_.n) + "bit";
    }

    BigInt message_space() const override {
        BigInt k = primes_.size();
        return rsa_ ? k * (k + 1) / 2 : k;
    }

    CodeSpace space() const override {
        BigInt B = binomial(wires(), 2);
        BigInt K = divisor_bound();
        switch (kind()) {
            case CodecKind::Order: return CodeSpace({B, K});
            case CodecKind::Rsa: return CodeSpace({B, K, K});
            default: {
                u64 W = wires() * (wires() - 1) / 2;
                return CodeSpace({binomial(W, 2) + W, K, K});
            }
        }
    }

    Message sample_message(Rng& rng) const override {
        std::size_t k = primes_.size();
        if (!rsa_) return {BigInt(primes_[uniform_below(rng, k)])};
        u64 idx = uniform_below(rng, k * (k + 1) / 2);
        std::size_t i = 0;
        while (idx >= k - i) idx -= k - i++;
        return {BigInt(primes_[i]) * primes_[i + idx]};
    }

    LiveRun run_live(const Message& msg, const TrialSeeds& seeds) const override {
        u64 N = static_cast<u64>(msg[0]);
        oracle::OracleSession s(oracle::GroupSpec::hidden(N, bits_), inputs(seeds, N), options());
        LiveRun run;
        run.output = oracle::play_live(game(seeds), s);
        run.success = succeeded(s, run.output, N, seeds);
        run.transcript = s.transcript();
        return run;
    }

    Encoding encode(const LiveRun& run, const Message& msg, const TrialSeeds& seeds) const override {
        auto tr = tracker::track_transcript(run.transcript, IntDomain{nvars_});
        auto evs = tracker::informative_events(tr.events(), kind() == CodecKind::RsaTwo ? 2 : 1);
        if (evs.empty()) return Encoding::none(kind());
        BigInt N = msg[0];
        auto pq = algebra::nbit_prime_divisors(N, cfg_.n);
        BigInt p = pq.at(0), q = rsa_ ? (pq.size() > 1 ? pq[1] : pq[0]) : pq[0];
        std::vector<std::vector<BigInt>> divs;
        std::vector<u64> ords;
        for (const auto* e : evs) {
            require(e->ordinal < wires() * (wires() - 1) / 2, "codec: comparison ordinal exceeds the counted bound");
            ords.push_back(e->ordinal);
            BigInt d = abs_big(e->relation->eval(xvec(seeds)));
            if (d == 0) break;
            divs.push_back(algebra::nbit_prime_divisors(d, cfg_.n));
            require(BigInt(divs.back().size()) <= divisor_bound(), "codec: more n-bit prime divisors than counted");
        }
        if (divs.empty()) return Encoding::none(kind());
        auto index = [](const std::vector<BigInt>& list, const BigInt& v) -> std::optional<BigInt> {
            auto it = std::find(list.begin(), list.end(), v);
            if (it == list.end()) return std::nullopt;
            return BigInt(it - list.begin());
        };
        switch (kind()) {
            case CodecKind::Order: {
                auto l = index(divs[0], N);
                if (!l) return Encoding::none(kind());
                return Encoding::of(kind(), {ords[0], *l});
            }
            case CodecKind::Rsa: {
                auto l1 = index(divs[0], p), l2 = index(divs[0], q);
                if (!l1 || !l2) return Encoding::none(kind());
                return Encoding::of(kind(), {ords[0], *l1, *l2});
            }
            default: {
                // both factors in the first collision, else one in each (either order)
                if (auto l1 = index(divs[0], p), l2 = index(divs[0], q); l1 && l2)
                    return Encoding::of(kind(), {pair_count() + ords[0], *l1, *l2});
                if (divs.size() < 2) return Encoding::none(kind());
                for (auto [a, b] : {std::pair{p, q}, std::pair{q, p}}) {
                    auto l1 = index(divs[0], a), l2 = index(divs[1], b);
                    if (l1 && l2) return Encoding::of(kind(), {subset_rank(ords), *l1, *l2});
                }
                return Encoding::none(kind());
            }
        }
    }

    Message decode_payload(const Encoding& enc, const TrialSeeds& seeds) const override {
        ReplayPlan plan;
        bool single = kind() != CodecKind::RsaTwo || enc.digits[0] >= pair_count();
        if (!single) {
            for (u64 o : subset_unrank(enc.digits[0], 2)) plan.directives.push_back(Directive::ordinal(o));
        } else if (kind() == CodecKind::RsaTwo) {
            plan.directives.push_back(Directive::ordinal(static_cast<u64>(enc.digits[0] - pair_count())));
        } else {
            plan.directives.push_back(Directive::ordinal(static_cast<u64>(enc.digits[0])));
        }
        auto out = tracker::replay_without_oracle(game(seeds), oracle::GroupSpec::hidden(0, bits_).public_info(),
                                                  inputs(seeds, 0), options(), IntDomain{nvars_}, std::move(plan));
        auto evs = tracker::informative_events(out.tracker.events());
        auto pick = [&](std::size_t event, const BigInt& digit) {
            if (event >= evs.size()) throw DecodeFailure("decode: missing informative collision");
            BigInt d = abs_big(evs[event]->relation->eval(xvec(seeds)));
            if (d == 0) throw DecodeFailure("decode: collision integer is zero");
            auto divs = algebra::nbit_prime_divisors(d, cfg_.n);
            if (digit >= divs.size()) throw DecodeFailure("decode: divisor index out of range");
            return divs[static_cast<std::size_t>(digit)];
        };
        switch (kind()) {
            case CodecKind::Order: return {pick(0, enc.digits[1])};
            case CodecKind::Rsa: return {pick(0, enc.digits[1]) * pick(0, enc.digits[2])};
            default: return {pick(0, enc.digits[1]) * pick(single ? 0 : 1, enc.digits[2])};
        }
    }

    // Shared-stream exponent of the second input (root extraction only).
    u64 root_x(const TrialSeeds& seeds) const {
        Rng rng = make_rng(seeds.shared, "root-x");
        return uniform_below(rng, u64(1) << cfg_.root_x_bits);
    }

private:
    u64 wires() const { return 1 + nvars_ + budget() + check_ops_; }
    BigInt pair_count() const { return binomial(wires() * (wires() - 1) / 2, 2); }

    // Collision integers have at most T_total + 1 + bits(x) bits; each n-bit prime
    // divisor contributes at least n - 1 of them.
    BigInt divisor_bound() const {
        u64 bits = budget() + check_ops_ + 1 + (nvars_ ? cfg_.root_x_bits : 0);
        return std::max<u64>(1, bits / (cfg_.n - 1));
    }

    std::vector<BigInt> xvec(const TrialSeeds& seeds) const {
        if (!nvars_) return {};
        return {BigInt(root_x(seeds))};
    }

    std::vector<InputSpec> inputs(const TrialSeeds& seeds, u64 N) const {
        std::vector<InputSpec> in{{1, 0}};
        if (nvars_) in.push_back({N ? root_x(seeds) % N : 0, 1});
        return in;
    }

    oracle::SessionOptions options() const {
        oracle::SessionOptions o;
        o.budget = budget();
        o.nvars = nvars_;
        return o;
    }

    oracle::Game game(const TrialSeeds& seeds) const {
        return [this, seed = seeds.algorithm](GroupApi& api) {
            AlgorithmOutput out = oracle::run_algorithm(cfg_.alg, api, seed);
            if (out.failed) return out;
            api.lift_budget(check_ops_);
            Element g = api.inputs()[0];
            switch (cfg_.game) {
                case HiddenGame::OrderFind: {
                    if (out.values.empty() || out.values[0] <= 0 || bit_length(out.values[0]) > bits_) break;
                    Element zg = oracle::scalar_mul(api, g, static_cast<u64>(out.values[0]));
                    api.equal(zg, api.op(g, g, true));
                    break;
                }
                case HiddenGame::RootExtraction: {
                    if (out.values.empty() || out.elements.empty()) break;
                    if (out.values[0] < 2 || bit_length(out.values[0]) > kRootExponentBits) break;
                    Element ye = oracle::scalar_mul(api, out.elements[0], static_cast<u64>(out.values[0]));
                    if (ye.id != api.inputs()[1].id) api.equal(ye, api.inputs()[1]);
                    break;
                }
                case HiddenGame::RepeatedSquaring: {
                    if (out.elements.empty()) break;
                    Element v = g;
                    for (u64 i = 0; i < cfg_.squarings; ++i) v = api.op(v, v, false);
                    api.equal(v, out.elements[0]);
                    break;
                }
            }
            return out;
        };
    }

    bool succeeded(const oracle::OracleSession& s, const AlgorithmOutput& out, u64 N, const TrialSeeds& seeds) const {
        if (out.failed) return false;
        switch (cfg_.game) {
            case HiddenGame::OrderFind: return !out.values.empty() && out.values[0] == N;
            case HiddenGame::RootExtraction: {
                if (out.values.empty() || out.elements.empty() || out.values[0] < 2) return false;
                if (bit_length(out.values[0]) > kRootExponentBits) return false;
                auto y = s.hidden_exponent(out.elements[0]);
                u64 e = static_cast<u64>(out.values[0]) % N;
                return y && algebra::mul_mod(*y, e, N) == root_x(seeds) % N;
            }
            case HiddenGame::RepeatedSquaring: {
                if (out.elements.empty()) return false;
                auto y = s.hidden_exponent(out.elements[0]);
                return y && *y == algebra::pow_mod(2, cfg_.squarings, N);
            }
        }
        return false;
    }

    HiddenOrderConfig cfg_;
    std::vector<u64> primes_;
    bool rsa_ = false;
    unsigned bits_ = 0;
    u64 check_ops_ = 0;
    std::size_t nvars_ = 0;
};

}  // namespace

std::unique_ptr<Codec> make_hidden_order_codec(HiddenOrderConfig cfg) {
    return std::make_unique<HiddenOrderCodec>(std::move(cfg));
}

}  // namespace genlab::codecs
