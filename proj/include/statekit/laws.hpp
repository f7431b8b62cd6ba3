#pragma once

// Randomized extensional checks of the monad / Kleisli-triple laws.
//
// Function equality is undecidable, so two actions are considered equal when
// they produce identical (value, state) pairs on every sampled state. States
// and values are 64-bit integers, which keeps every comparison exact.
//
// Samples are drawn from an affine family of transfer functions
//
//     x ↦ λs.(a·x + b·s + c, d·s + e·x + k),    a..k ∈ [-3, 3]
//
// which is small enough to evaluate by hand and rich enough to expose
// state-threading and evaluation-order bugs.

#include <cstddef>
#include <cstdint>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "statekit/core.hpp"

namespace statekit::laws {

using Int = std::int64_t;
using IntAction = Action<Int, Int>;
using IntPair = ValueStatePair<Int, Int>;

struct Range {
    Int lo = -100;
    Int hi = 100;

    friend bool operator==(const Range&, const Range&) = default;
};

struct SampleConfig {
    std::uint64_t seed = 0;
    std::size_t samples = 1000;
    Range state_range{};
    Range value_range{};
};

/// Generated values are kept well inside 64 bits even after several layers
/// of affine composition.
inline constexpr Int max_range_magnitude = 1'000'000;
inline constexpr Int max_coefficient = 3;

inline void validate(const SampleConfig& cfg) {
    auto check = [](const Range& r, const char* what) {
        if (r.lo > r.hi) {
            throw std::invalid_argument(std::string(what) + ": lo > hi");
        }
        if (r.lo < -max_range_magnitude || r.hi > max_range_magnitude) {
            throw std::invalid_argument(std::string(what) + ": magnitude exceeds 1000000");
        }
    };
    check(cfg.state_range, "state_range");
    check(cfg.value_range, "value_range");
}

/// `x ↦ λs.(a·x + b·s + c, d·s + e·x + k)`
struct AffineTransfer {
    Int a = 0, b = 0, c = 0, d = 1, e = 0, k = 0;

    IntAction operator()(Int x) const {
        return IntAction([t = *this, x](const Int& s) { return t.eval(x, s); });
    }

    IntPair eval(Int x, Int s) const { return {a * x + b * s + c, d * s + e * x + k}; }

    friend bool operator==(const AffineTransfer&, const AffineTransfer&) = default;
};

/// Non-contextual `x ↦ p·x + q`.
struct AffineFn {
    Int p = 1, q = 0;

    Int operator()(Int x) const { return p * x + q; }

    friend bool operator==(const AffineFn&, const AffineFn&) = default;
};

/// Sampled action: `bind(f, get())` when it reads the state, otherwise
/// `bind(f, inject(seed_value))`.
struct ActionSpec {
    bool reads_state = true;
    Int seed_value = 0;
    AffineTransfer f{};

    IntAction build() const {
        return reads_state ? bind(f, get<Int>()) : bind(f, inject<Int>(seed_value));
    }

    friend bool operator==(const ActionSpec&, const ActionSpec&) = default;
};

/// Every field is generated for every sample; each law reads the ones it
/// needs.
struct Sample {
    AffineTransfer f{};
    AffineTransfer g{};
    AffineFn p{};
    AffineFn q{};
    ActionSpec m{};
    Int x = 0;
    Int s = 0;
};

struct Counterexample {
    std::string property;
    std::string inputs;
    Sample sample;
    IntPair expected;
    IntPair actual;
};

inline constexpr std::size_t max_counterexamples = 10;

struct LawReport {
    std::string law_name;
    std::size_t checked = 0;
    bool passed = true;
    std::vector<Counterexample> counterexamples;
};

class SampleGenerator {
public:
    explicit SampleGenerator(const SampleConfig& cfg)
        : rng_(cfg.seed), state_range_(cfg.state_range), value_range_(cfg.value_range) {}

    Sample next() {
        Sample out;
        out.f = transfer();
        out.g = transfer();
        out.p = {coefficient(), coefficient()};
        out.q = {coefficient(), coefficient()};
        out.m.reads_state = uniform(0, 1) == 1;
        out.m.seed_value = uniform(value_range_.lo, value_range_.hi);
        out.m.f = transfer();
        out.x = uniform(value_range_.lo, value_range_.hi);
        out.s = uniform(state_range_.lo, state_range_.hi);
        return out;
    }

private:
    Int uniform(Int lo, Int hi) { return std::uniform_int_distribution<Int>(lo, hi)(rng_); }
    Int coefficient() { return uniform(-max_coefficient, max_coefficient); }

    AffineTransfer transfer() {
        AffineTransfer t;
        t.a = coefficient();
        t.b = coefficient();
        t.c = coefficient();
        t.d = coefficient();
        t.e = coefficient();
        t.k = coefficient();
        return t;
    }

    std::mt19937_64 rng_;
    Range state_range_;
    Range value_range_;
};

inline std::string describe(const AffineTransfer& t) {
    std::ostringstream os;
    os << '[' << t.a << ',' << t.b << ',' << t.c << ',' << t.d << ',' << t.e << ',' << t.k << ']';
    return os.str();
}

inline std::string describe(const AffineFn& fn) {
    std::ostringstream os;
    os << '[' << fn.p << ',' << fn.q << ']';
    return os.str();
}

inline std::string describe(const ActionSpec& m) {
    std::ostringstream os;
    if (m.reads_state) {
        os << "get";
    } else {
        os << "inject(" << m.seed_value << ')';
    }
    os << ">>" << describe(m.f);
    return os.str();
}

/// The operations under test, supplied as (possibly generic) callables over
/// integer state:
///   inject_impl(x)        -> Action<Int, X>
///   bind_impl(f, m)       -> Action<Int, B>
///   fmap_impl(f, m)       -> Action<Int, B>
template <class Inject, class Bind, class Fmap>
struct TripleUnderTest {
    Inject inject_impl;
    Bind bind_impl;
    Fmap fmap_impl;
};

template <class Inject, class Bind, class Fmap>
TripleUnderTest(Inject, Bind, Fmap) -> TripleUnderTest<Inject, Bind, Fmap>;

inline auto core_triple() {
    return TripleUnderTest{
        [](const auto& x) { return inject<Int>(x); },
        [](auto f, auto m) { return bind(std::move(f), std::move(m)); },
        [](auto f, auto m) { return fmap(std::move(f), std::move(m)); },
    };
}

namespace detail {

class ReportBuilder {
public:
    explicit ReportBuilder(std::string name) { report_.law_name = std::move(name); }

    void count() { ++report_.checked; }

    /// Records a failing comparison; returns false when the pair differs.
    bool compare(const std::string& property, const std::string& inputs, const Sample& sample,
                 const IntPair& expected, const IntPair& actual) {
        if (expected == actual) {
            return true;
        }
        report_.passed = false;
        if (report_.counterexamples.size() < max_counterexamples) {
            report_.counterexamples.push_back({property, inputs, sample, expected, actual});
        }
        return false;
    }

    LawReport finish() && { return std::move(report_); }

private:
    LawReport report_;
};

template <class Body>
LawReport sample_law(std::string name, const SampleConfig& cfg, Body&& body) {
    validate(cfg);
    ReportBuilder builder(std::move(name));
    SampleGenerator gen(cfg);
    for (std::size_t i = 0; i < cfg.samples; ++i) {
        builder.count();
        body(builder, gen.next());
    }
    return std::move(builder).finish();
}

inline std::string inputs_fxs(const Sample& smp) {
    std::ostringstream os;
    os << "f=" << describe(smp.f) << ";x=" << smp.x << ";s=" << smp.s;
    return os.str();
}

}  // namespace detail

/// `bind(f, inject(x)) ≡ f(x)`
template <class Triple>
LawReport check_left_identity(const Triple& t, const SampleConfig& cfg) {
    return detail::sample_law("left_identity", cfg, [&](detail::ReportBuilder& rb, const Sample& smp) {
        const auto lhs = t.bind_impl(smp.f, t.inject_impl(smp.x));
        rb.compare("left_identity", detail::inputs_fxs(smp), smp, run(smp.f(smp.x), smp.s),
                   run(lhs, smp.s));
    });
}

/// `bind(inject, m) ≡ m`
template <class Triple>
LawReport check_right_identity(const Triple& t, const SampleConfig& cfg) {
    return detail::sample_law("right_identity", cfg, [&](detail::ReportBuilder& rb, const Sample& smp) {
        const IntAction m = smp.m.build();
        auto eta = [&t](const Int& x) { return t.inject_impl(x); };
        const auto lhs = t.bind_impl(eta, m);
        rb.compare("right_identity", "m=" + describe(smp.m) + ";s=" + std::to_string(smp.s), smp,
                   run(m, smp.s), run(lhs, smp.s));
    });
}

/// `bind(g, bind(f, m)) ≡ bind(x ↦ bind(g, f(x)), m)`
template <class Triple>
LawReport check_associativity(const Triple& t, const SampleConfig& cfg) {
    return detail::sample_law("associativity", cfg, [&](detail::ReportBuilder& rb, const Sample& smp) {
        const IntAction m = smp.m.build();
        const auto nested = t.bind_impl(smp.g, t.bind_impl(smp.f, m));
        auto fused_fn = [&t, f = smp.f, g = smp.g](const Int& x) { return t.bind_impl(g, f(x)); };
        const auto fused = t.bind_impl(fused_fn, m);
        rb.compare("associativity",
                   "f=" + describe(smp.f) + ";g=" + describe(smp.g) + ";m=" + describe(smp.m) +
                       ";s=" + std::to_string(smp.s),
                   smp, run(fused, smp.s), run(nested, smp.s));
    });
}

/// `fmap(id, m) ≡ m` and `fmap(q ∘ p, m) ≡ fmap(q, fmap(p, m))`
template <class Triple>
LawReport check_functor_laws(const Triple& t, const SampleConfig& cfg) {
    return detail::sample_law("functor", cfg, [&](detail::ReportBuilder& rb, const Sample& smp) {
        const IntAction m = smp.m.build();
        const std::string ctx = "m=" + describe(smp.m) + ";s=" + std::to_string(smp.s);
        auto id = [](const Int& x) { return x; };
        if (!rb.compare("functor_identity", ctx, smp, run(m, smp.s),
                        run(t.fmap_impl(id, m), smp.s))) {
            return;
        }
        const auto fused = t.fmap_impl(compose(smp.q, smp.p), m);
        const auto chained = t.fmap_impl(smp.q, t.fmap_impl(smp.p, m));
        rb.compare("functor_composition",
                   "p=" + describe(smp.p) + ";q=" + describe(smp.q) + ";" + ctx, smp,
                   run(fused, smp.s), run(chained, smp.s));
    });
}

/// `fmap(p, m) ≡ bind(inject ∘ p, m)` and `bind(f, m) ≡ join(fmap(f, m))`
template <class Triple>
LawReport check_coherence(const Triple& t, const SampleConfig& cfg) {
    return detail::sample_law("coherence", cfg, [&](detail::ReportBuilder& rb, const Sample& smp) {
        const IntAction m = smp.m.build();
        const std::string ctx = "m=" + describe(smp.m) + ";s=" + std::to_string(smp.s);
        auto eta = [&t](const Int& x) { return t.inject_impl(x); };
        const auto via_fmap = t.fmap_impl(smp.p, m);
        const auto via_bind = t.bind_impl(compose(eta, smp.p), m);
        if (!rb.compare("fmap_as_bind", "p=" + describe(smp.p) + ";" + ctx, smp,
                        run(via_fmap, smp.s), run(via_bind, smp.s))) {
            return;
        }
        const auto bound = t.bind_impl(smp.f, m);
        const auto joined = join(t.fmap_impl(smp.f, m));
        rb.compare("bind_as_join", "f=" + describe(smp.f) + ";" + ctx, smp, run(bound, smp.s),
                   run(joined, smp.s));
    });
}

/// Unit and multiplication commute with the functor once flattened:
///   join(inject(m))      ≡ join(fmap(inject, m))
///   join(join(mmm))      ≡ join(fmap(join, mmm))
/// where mmm = fmap(x ↦ fmap(g, f(x)), m) is a three-level action.
template <class Triple>
LawReport check_naturality(const Triple& t, const SampleConfig& cfg) {
    return detail::sample_law("naturality", cfg, [&](detail::ReportBuilder& rb, const Sample& smp) {
        const IntAction m = smp.m.build();
        const std::string ctx = "m=" + describe(smp.m) + ";s=" + std::to_string(smp.s);
        auto eta = [&t](const Int& x) { return t.inject_impl(x); };
        const IntAction eta_outer = join(t.inject_impl(m));
        const IntAction eta_inner = join(t.fmap_impl(eta, m));
        if (!rb.compare("eta", ctx, smp, run(eta_outer, smp.s), run(eta_inner, smp.s))) {
            return;
        }
        auto layer = [f = smp.f, g = smp.g](const Int& x) {
            return fmap([g](const Int& y) { return g(y); }, f(x));
        };
        const Action<Int, Action<Int, IntAction>> mmm = fmap(layer, m);
        const IntAction mu_outer = join(join(mmm));
        const IntAction mu_inner =
            join(t.fmap_impl([](const Action<Int, IntAction>& mm) { return join(mm); }, mmm));
        rb.compare("mu",
                   "f=" + describe(smp.f) + ";g=" + describe(smp.g) + ";" + ctx, smp,
                   run(mu_outer, smp.s), run(mu_inner, smp.s));
    });
}

/// `bind(h, bind(g, inject(x)))` against the unfolded form
/// `λs. let (x, s') = inject(x)(s); (y, t') = g(x)(s') in h(y)(t')`,
/// evaluated step by step without bind.
inline LawReport check_expansion(const SampleConfig& cfg) {
    return detail::sample_law("expansion", cfg, [](detail::ReportBuilder& rb, const Sample& smp) {
        const AffineTransfer& g = smp.f;
        const AffineTransfer& h = smp.g;
        const IntAction bound = bind(h, bind(g, inject<Int>(smp.x)));
        const auto [x1, s1] = inject<Int>(smp.x).run(smp.s);
        const auto [y, t1] = g(x1).run(s1);
        const IntPair unfolded = h(y).run(t1);
        rb.compare("expansion",
                   "g=" + describe(g) + ";h=" + describe(h) + ";x=" + std::to_string(smp.x) +
                       ";s=" + std::to_string(smp.s),
                   smp, unfolded, run(bound, smp.s));
    });
}

template <class Triple>
std::vector<LawReport> check_all(const Triple& t, const SampleConfig& cfg) {
    return {
        check_left_identity(t, cfg), check_right_identity(t, cfg), check_associativity(t, cfg),
        check_functor_laws(t, cfg),  check_coherence(t, cfg),      check_naturality(t, cfg),
        check_expansion(cfg),
    };
}

/// `LAW <name> PASS|FAIL checked=<n> counterexamples=<k>` followed by one
/// indented `CE` line per recorded counterexample.
inline std::string render(const LawReport& r) {
    std::ostringstream os;
    os << "LAW " << r.law_name << ' ' << (r.passed ? "PASS" : "FAIL") << " checked=" << r.checked
       << " counterexamples=" << r.counterexamples.size() << '\n';
    for (const auto& ce : r.counterexamples) {
        os << "  CE inputs=" << ce.property << ':' << ce.inputs << " expected=" << ce.expected.value
           << ',' << ce.expected.state << " actual=" << ce.actual.value << ',' << ce.actual.state
           << '\n';
    }
    return os.str();
}

/// Deliberately broken triples. Each one violates at least one law.
namespace mutants {

/// Keeps the state produced by `m` and discards the state the transfer
/// function leaves behind.
inline auto state_dropping_bind() {
    auto base = core_triple();
    return TripleUnderTest{
        base.inject_impl,
        [](auto f, auto m) {
            using R = decltype(f(std::declval<typename decltype(m)::value_type>()));
            return R([f, m](const Int& s) {
                auto [x, s1] = m.run(s);
                auto [y, discarded] = f(x).run(s1);
                (void)discarded;
                return ValueStatePair<typename R::value_type, Int>{y, s1};
            });
        },
        base.fmap_impl,
    };
}

/// `x ↦ λs.(x, s + 1)`
inline auto state_bumping_inject() {
    auto base = core_triple();
    return TripleUnderTest{
        [](const auto& x) {
            using X = std::decay_t<decltype(x)>;
            return Action<Int, X>([x](const Int& s) { return ValueStatePair<X, Int>{x, s + 1}; });
        },
        base.bind_impl,
        base.fmap_impl,
    };
}

/// Runs the transfer function on the incoming state first and only then
/// applies `m`'s state change.
inline auto order_swapping_bind() {
    auto base = core_triple();
    return TripleUnderTest{
        base.inject_impl,
        [](auto f, auto m) {
            using R = decltype(f(std::declval<typename decltype(m)::value_type>()));
            return R([f, m](const Int& s) {
                auto x = m.run(s).value;
                auto [y, s1] = f(x).run(s);
                auto s2 = m.run(s1).state;
                return ValueStatePair<typename R::value_type, Int>{y, s2};
            });
        },
        base.fmap_impl,
    };
}

/// Re-wraps the mapped value at the original state, dropping `m`'s
/// post-state.
inline auto state_dropping_fmap() {
    auto base = core_triple();
    return TripleUnderTest{
        base.inject_impl,
        base.bind_impl,
        [](auto f, auto m) {
            using A = typename decltype(m)::value_type;
            using B = std::decay_t<decltype(f(std::declval<A>()))>;
            return Action<Int, B>([f, m](const Int& s) {
                return ValueStatePair<B, Int>{f(m.run(s).value), s};
            });
        },
    };
}

inline const std::vector<std::string>& names() {
    static const std::vector<std::string> all{
        "state-dropping-bind", "state-bumping-inject", "order-swapping-bind",
        "state-dropping-fmap"};
    return all;
}

/// Runs `fn(triple)` on the mutant called `name`; returns false for an
/// unknown name.
template <class Fn>
bool visit(const std::string& name, Fn&& fn) {
    if (name == "state-dropping-bind") {
        fn(state_dropping_bind());
    } else if (name == "state-bumping-inject") {
        fn(state_bumping_inject());
    } else if (name == "order-swapping-bind") {
        fn(order_swapping_bind());
    } else if (name == "state-dropping-fmap") {
        fn(state_dropping_fmap());
    } else {
        return false;
    }
    return true;
}

}  // namespace mutants

}  // namespace statekit::laws
