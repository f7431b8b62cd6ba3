#pragma once

// State-threading calculus: an action is a pure function from a state to a
// (value, next state) pair. Everything else in statekit is built from the
// operations in this header.

#include <concepts>
#include <functional>
#include <type_traits>
#include <utility>

namespace statekit {

struct Unit {
    friend bool operator==(Unit, Unit) = default;
};

inline constexpr Unit unit{};

template <class A, class S>
struct ValueStatePair {
    A value;
    S state;

    friend bool operator==(const ValueStatePair&, const ValueStatePair&) = default;
};

template <class S, class A>
class Action;

namespace detail {

template <class T>
struct is_action : std::false_type {};

template <class S, class A>
struct is_action<Action<S, A>> : std::true_type {};

}  // namespace detail

template <class T>
concept AnyAction = detail::is_action<std::remove_cvref_t<T>>::value;

/// A contextual computation over state `S` yielding a value of type `A`.
///
/// Actions are immutable values. Copying one copies a handle to the same
/// step function; running it never mutates anything.
template <class S, class A>
class Action {
public:
    using state_type = S;
    using value_type = A;
    using pair_type = ValueStatePair<A, S>;

    template <class F>
        requires(!std::same_as<std::remove_cvref_t<F>, Action>) &&
                std::is_invocable_r_v<pair_type, const F&, const S&>
    explicit Action(F step) : step_(std::move(step)) {}

    pair_type run(const S& s) const { return step_(s); }

private:
    std::function<pair_type(const S&)> step_;
};

/// Function from a plain value to an action.
template <class S, class A, class B>
using TransferFn = std::function<Action<S, B>(const A&)>;

template <class S, class A>
ValueStatePair<A, S> run(const Action<S, A>& m, const S& s0) {
    return m.run(s0);
}

/// Wraps an arbitrary step function; the value type is taken from the pair
/// it returns.
template <class S, class F>
auto make_action(F step) {
    using Pair = std::invoke_result_t<const F&, const S&>;
    using A = decltype(std::declval<Pair>().value);
    return Action<S, A>(std::move(step));
}

/// `x ↦ λs.(x, s)`.
template <class S, class A>
Action<S, std::decay_t<A>> inject(A&& x) {
    using V = std::decay_t<A>;
    return Action<S, V>([x = V(std::forward<A>(x))](const S& s) {
        return ValueStatePair<V, S>{x, s};
    });
}

/// Runs `m`, feeds its value to `f`, and runs the resulting action on the
/// state `m` left behind.
template <class F, class S, class A>
    requires AnyAction<std::invoke_result_t<const F&, const A&>>
auto bind(F f, Action<S, A> m) {
    using R = std::remove_cvref_t<std::invoke_result_t<const F&, const A&>>;
    static_assert(std::same_as<typename R::state_type, S>,
                  "bind: transfer function must produce an action over the same state");
    return R([f = std::move(f), m = std::move(m)](const S& s) {
        auto [x, s1] = m.run(s);
        return f(x).run(s1);
    });
}

/// Applies a non-contextual function to the value of `m`, keeping the
/// state `m` produced.
template <class F, class S, class A>
auto fmap(F f, Action<S, A> m) {
    using B = std::decay_t<std::invoke_result_t<const F&, const A&>>;
    return Action<S, B>([f = std::move(f), m = std::move(m)](const S& s) {
        auto [x, s1] = m.run(s);
        return ValueStatePair<B, S>{f(x), std::move(s1)};
    });
}

/// Plain function composition: `compose(b, a)(z) == b(a(z))`.
template <class B, class A>
auto compose(B b, A a) {
    return [b = std::move(b), a = std::move(a)](const auto& z) { return b(a(z)); };
}

/// Kleisli composition: `kleisli(g, f)(x) == bind(g, f(x))`.
template <class G, class F>
auto kleisli(G g, F f) {
    return [g = std::move(g), f = std::move(f)](const auto& x) { return bind(g, f(x)); };
}

/// Flattens an action producing an action: runs the outer one, then the
/// inner one on the outer's post-state.
template <class S, class A>
Action<S, A> join(Action<S, Action<S, A>> mm) {
    return Action<S, A>([mm = std::move(mm)](const S& s) {
        auto [m, s1] = mm.run(s);
        return m.run(s1);
    });
}

template <class S>
Action<S, S> get() {
    return Action<S, S>([](const S& s) { return ValueStatePair<S, S>{s, s}; });
}

template <class S>
Action<S, Unit> put(S s1) {
    return Action<S, Unit>(
        [s1 = std::move(s1)](const S&) { return ValueStatePair<Unit, S>{unit, s1}; });
}

inline constexpr auto identity = [](const auto& x) { return x; };

/// Sequencing where the second action ignores the first value.
template <class S, class A, class B>
Action<S, B> then(Action<S, A> first, Action<S, B> second) {
    return bind([second = std::move(second)](const A&) { return second; }, std::move(first));
}

}  // namespace statekit
