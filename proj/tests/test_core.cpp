#include <catch_amalgamated.hpp>

#include <cstdint>
#include <random>
#include <thread>
#include <vector>

#include "statekit/core.hpp"

using namespace statekit;
using I = std::int64_t;
using P = ValueStatePair<I, I>;

namespace {

Action<I, I> counter_step(I x) {
    return Action<I, I>([x](const I& s) { return P{x + s, s + 1}; });
}

// g = x ↦ λs.(x·2, s+1),  h = y ↦ λs.(y+1, s·10)
Action<I, I> g_fn(const I& x) {
    return Action<I, I>([x](const I& s) { return P{x * 2, s + 1}; });
}
Action<I, I> h_fn(const I& y) {
    return Action<I, I>([y](const I& s) { return P{y + 1, s * 10}; });
}

bool same_on(const Action<I, I>& a, const Action<I, I>& b, const std::vector<I>& states) {
    for (I s : states) {
        if (!(run(a, s) == run(b, s))) {
            return false;
        }
    }
    return true;
}

const std::vector<I> sample_states{-7, -1, 0, 1, 2, 5, 42, 1000};

}  // namespace

TEST_CASE("inject passes the state through") {
    CHECK(run(inject<I>(I{7}), I{100}) == P{7, 100});
    for (I s : sample_states) {
        CHECK(run(inject<I>(unit), s) == ValueStatePair<Unit, I>{unit, s});
    }
    auto eta = [](const I& x) { return inject<I>(x); };
    CHECK(same_on(bind(eta, inject<I>(I{3})), inject<I>(I{3}), sample_states));
}

TEST_CASE("run evaluates an action at a state") {
    CHECK(run(inject<I>(true), I{0}) == ValueStatePair<bool, I>{true, 0});
    CHECK(run(get<I>(), I{42}) == P{42, 42});
    CHECK(run(bind(counter_step, inject<I>(I{3})), I{10}) == P{13, 11});
}

TEST_CASE("bind threads the post-state into the transfer function") {
    CHECK(run(bind(counter_step, inject<I>(I{3})), I{10}) == P{13, 11});

    auto eta = [](const I& x) { return inject<I>(x); };
    const Action<I, I> m = bind(counter_step, get<I>());
    CHECK(same_on(bind(eta, m), m, sample_states));

    CHECK(run(bind(h_fn, bind(g_fn, inject<I>(I{3}))), I{1}) == P{7, 20});
}

TEST_CASE("fmap keeps the post-state") {
    CHECK(run(fmap([](const I& x) { return x * 2; }, inject<I>(I{3})), I{5}) == P{6, 5});

    const Action<I, I> m = bind(counter_step, get<I>());
    CHECK(same_on(fmap(identity, m), m, sample_states));

    const Action<I, I> bump([](const I& s) { return P{s, s + 1}; });
    CHECK(run(fmap([](const I& x) { return x + 1; }, bump), I{0}) == P{1, 1});
}

TEST_CASE("compose is plain function composition") {
    auto inc = [](I x) { return x + 1; };
    auto dbl = [](I x) { return x * 2; };
    auto sq = [](I x) { return x * x; };
    CHECK(compose(inc, dbl)(3) == 7);
    for (I x : sample_states) {
        CHECK(compose(identity, dbl)(x) == dbl(x));
        CHECK(compose(dbl, identity)(x) == dbl(x));
        CHECK(compose(sq, compose(inc, dbl))(x) == compose(compose(sq, inc), dbl)(x));
    }
}

TEST_CASE("kleisli composes transfer functions through bind") {
    auto eta = [](const I& x) { return inject<I>(x); };
    for (I x : sample_states) {
        CHECK(same_on(kleisli(eta, counter_step)(x), counter_step(x), sample_states));
        CHECK(same_on(kleisli(g_fn, eta)(x), g_fn(x), sample_states));
    }
    CHECK(run(kleisli(h_fn, g_fn)(I{3}), I{1}) == P{7, 20});
    CHECK(run(kleisli(h_fn, g_fn)(I{3}), I{1}) == run(bind(h_fn, bind(g_fn, inject<I>(I{3}))), I{1}));
}

TEST_CASE("join flattens nested actions") {
    CHECK(run(join(inject<I>(inject<I>(I{4}))), I{9}) == P{4, 9});

    const Action<I, I> m = bind(counter_step, get<I>());
    CHECK(same_on(bind(g_fn, m), join(fmap(g_fn, m)), sample_states));

    const Action<I, Action<I, I>> nested([](const I& s) {
        return ValueStatePair<Action<I, I>, I>{Action<I, I>([](const I& t) { return P{t, t + 1}; }), s + 10};
    });
    CHECK(run(join(nested), I{0}) == P{10, 11});
}

TEST_CASE("get observes the state") {
    CHECK(run(get<I>(), I{42}) == P{42, 42});
    CHECK(run(bind([](const I& x) { return inject<I>(x); }, get<I>()), I{7}) == P{7, 7});
    CHECK(run(fmap([](const I& x) { return x + 1; }, get<I>()), I{0}) == P{1, 0});
}

TEST_CASE("put replaces the state") {
    using U = ValueStatePair<Unit, I>;
    CHECK(run(put(I{5}), I{0}) == U{unit, 5});
    CHECK(run(bind([](Unit) { return get<I>(); }, put(I{5})), I{0}) == P{5, 5});
    CHECK(run(bind([](Unit) { return put(I{2}); }, put(I{1})), I{9}) == U{unit, 2});
}

TEST_CASE("monad laws hold on a small exhaustive grid") {
    // The affine family x ↦ λs.(a·x + b·s, d·s + e·x) over coefficients {-1, 0, 2}.
    const std::vector<I> coeffs{-1, 0, 2};
    std::vector<std::function<Action<I, I>(const I&)>> fns;
    for (I a : coeffs) {
        for (I b : coeffs) {
            for (I d : coeffs) {
                fns.emplace_back([a, b, d](const I& x) {
                    return Action<I, I>([=](const I& s) { return P{a * x + b * s, d * s + x}; });
                });
            }
        }
    }
    auto eta = [](const I& x) { return inject<I>(x); };
    const std::vector<I> xs{-3, 0, 4};
    for (const auto& f : fns) {
        for (I x : xs) {
            CHECK(same_on(bind(f, inject<I>(x)), f(x), sample_states));
            const Action<I, I> m = f(x);
            CHECK(same_on(bind(eta, m), m, sample_states));
        }
    }
    for (std::size_t i = 0; i < fns.size(); i += 4) {
        for (std::size_t j = 1; j < fns.size(); j += 5) {
            const auto& f = fns[i];
            const auto& g = fns[j];
            const Action<I, I> m = bind(f, get<I>());
            CHECK(same_on(bind(g, bind(f, m)), bind(kleisli(g, f), m), sample_states));
            CHECK(same_on(fmap(compose([](I v) { return v + 1; }, [](I v) { return 3 * v; }), m),
                          fmap([](I v) { return v + 1; }, fmap([](I v) { return 3 * v; }, m)),
                          sample_states));
            CHECK(same_on(fmap([](I v) { return v - 2; }, m),
                          bind(compose(eta, [](I v) { return v - 2; }), m), sample_states));
        }
    }
}

TEST_CASE("running an action twice gives identical pairs") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<I> dist(-1000, 1000);
    const Action<I, I> m = bind(h_fn, bind(g_fn, bind(counter_step, get<I>())));
    for (int i = 0; i < 200; ++i) {
        const I s = dist(rng);
        CHECK(run(m, s) == run(m, s));
    }
}

TEST_CASE("actions can be evaluated from several threads") {
    const Action<I, I> m = bind(h_fn, bind(g_fn, bind(counter_step, get<I>())));
    std::vector<P> expected;
    for (I s = 0; s < 64; ++s) {
        expected.push_back(run(m, s));
    }
    std::vector<std::vector<P>> results(4);
    std::vector<std::thread> threads;
    for (std::size_t k = 0; k < results.size(); ++k) {
        threads.emplace_back([&, k] {
            for (I s = 0; s < 64; ++s) {
                results[k].push_back(run(m, s));
            }
        });
    }
    for (auto& t : threads) {
        t.join();
    }
    for (const auto& r : results) {
        CHECK(r == expected);
    }
}

TEST_CASE("then discards the first value but keeps its state") {
    const auto seq = then(put(I{3}), fmap([](const I& s) { return s * 2; }, get<I>()));
    CHECK(run(seq, I{100}) == P{6, 3});
}
