#include <catch_amalgamated.hpp>

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "statekit/classify.hpp"

using namespace statekit;
using namespace statekit::classify;
using I = std::int64_t;
using System = SystemClass<I, I, I>;

namespace {

Action<I, I> counter(const I& x) {
    return Action<I, I>([x](const I& s) { return ValueStatePair<I, I>{x + s, s + 1}; });
}

std::vector<I> random_inputs(std::mt19937_64& rng) {
    std::uniform_int_distribution<I> len(0, 20);
    std::uniform_int_distribution<I> val(0, 1000);
    std::vector<I> xs(static_cast<std::size_t>(len(rng)));
    for (auto& x : xs) {
        x = val(rng);
    }
    return xs;
}

}  // namespace

TEST_CASE("lifting lower classes never touches the state") {
    const auto c0 = lift(System{Class0<I>{7}});
    const auto c1 = lift(System{Class1<I>{[](Time t) { return 2 * t; }}});
    const auto c2 = lift(System{Class2<I, I>{[](const I& x) { return x + 1; }}});
    for (I s : {-5, 0, 13}) {
        CHECK(run(c0(12345), s) == ValueStatePair<I, I>{7, s});
        CHECK(run(c1(3), s) == ValueStatePair<I, I>{6, s});
        CHECK(run(c2(4), s) == ValueStatePair<I, I>{5, s});
    }
}

TEST_CASE("class 3 lifts to its own transfer function") {
    const auto c3 = lift(System{Class3<I, I, I>{counter}});
    CHECK(run(c3(10), I{0}) == ValueStatePair<I, I>{10, 1});
}

TEST_CASE("class 1 needs a time input") {
    using TextSystem = SystemClass<I, std::string, I>;
    const auto c2 = lift(TextSystem{Class2<std::string, I>{[](const std::string& x) {
        return static_cast<I>(x.size());
    }}});
    CHECK(run(c2("four"), I{0}).value == 4);
    CHECK_THROWS_AS(lift(TextSystem{Class1<I>{[](Time t) { return t; }}}), std::invalid_argument);
}

TEST_CASE("run_system threads the state in input order") {
    const auto c0 = lift(System{Class0<I>{1}});
    auto r0 = run_system(c0, std::vector<I>{9, 9, 9}, I{0});
    CHECK(r0.outputs == std::vector<I>{1, 1, 1});
    CHECK(r0.final_state == 0);

    auto r3 = run_system(counter, std::vector<I>{10, 10}, I{0});
    CHECK(r3.outputs == std::vector<I>{10, 11});
    CHECK(r3.final_state == 2);

    auto empty = run_system(counter, std::vector<I>{}, I{5});
    CHECK(empty.outputs.empty());
    CHECK(empty.final_state == 5);
}

TEST_CASE("run_system properties") {
    std::mt19937_64 rng(2024);
    const std::vector<TransferFn<I, I, I>> lifted{
        lift(System{Class0<I>{3}}),
        lift(System{Class1<I>{[](Time t) { return t * t; }}}),
        lift(System{Class2<I, I>{[](const I& x) { return 7 - x; }}}),
    };
    for (int i = 0; i < 200; ++i) {
        const auto xs = random_inputs(rng);
        const I s0 = static_cast<I>(rng() % 1000);
        for (const auto& f : lifted) {
            CHECK(run_system(f, xs, s0).final_state == s0);
        }

        // Singleton input equals one bind/inject step.
        const auto single = run_system(counter, std::vector<I>{s0}, s0);
        const auto direct = run(bind(counter, inject<I>(s0)), s0);
        CHECK(single.outputs == std::vector<I>{direct.value});
        CHECK(single.final_state == direct.state);

        // Splitting the input splits the run.
        const auto ys = random_inputs(rng);
        std::vector<I> both = xs;
        both.insert(both.end(), ys.begin(), ys.end());
        const auto whole = run_system(counter, both, s0);
        const auto first = run_system(counter, xs, s0);
        const auto second = run_system(counter, ys, first.final_state);
        std::vector<I> joined = first.outputs;
        joined.insert(joined.end(), second.outputs.begin(), second.outputs.end());
        CHECK(whole.outputs == joined);
        CHECK(whole.final_state == second.final_state);
    }
}
