#pragma once

// The four system classes and their lifting into state-threading transfer
// functions. A lifted class 0/1/2 system never reads or writes the state.

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <utility>
#include <variant>
#include <vector>

#include "statekit/core.hpp"

namespace statekit::classify {

/// Discrete tick count.
using Time = std::int64_t;

template <class Out>
struct Class0 {
    Out c;
};

template <class Out>
struct Class1 {
    std::function<Out(Time)> f;
};

template <class In, class Out>
struct Class2 {
    std::function<Out(const In&)> f;
};

template <class S, class In, class Out>
struct Class3 {
    TransferFn<S, In, Out> f;
};

template <class S, class In, class Out>
using SystemClass = std::variant<Class0<Out>, Class1<Out>, Class2<In, Out>, Class3<S, In, Out>>;

template <class S, class In, class Out>
TransferFn<S, In, Out> lift(const SystemClass<S, In, Out>& sys) {
    return std::visit(
        [](const auto& variant) -> TransferFn<S, In, Out> {
            using V = std::decay_t<decltype(variant)>;
            if constexpr (std::is_same_v<V, Class0<Out>>) {
                return [c = variant.c](const In&) { return inject<S>(c); };
            } else if constexpr (std::is_same_v<V, Class1<Out>>) {
                if constexpr (std::is_convertible_v<In, Time>) {
                    return [f = variant.f](const In& t) { return inject<S>(f(static_cast<Time>(t))); };
                } else {
                    throw std::invalid_argument("class 1 systems require a time input");
                }
            } else if constexpr (std::is_same_v<V, Class2<In, Out>>) {
                return [f = variant.f](const In& x) { return inject<S>(f(x)); };
            } else {
                return variant.f;
            }
        },
        sys);
}

template <class Out, class S>
struct SystemRun {
    std::vector<Out> outputs;
    S final_state;
};

/// Feeds `inputs` through `f` in order, threading the state from `s0`:
/// `(y_i, s_{i+1}) = run(bind(f, inject(x_i)), s_i)`.
template <class S, class In, class F>
auto run_system(const F& f, const std::vector<In>& inputs, S s0) {
    using Out = typename std::invoke_result_t<const F&, const In&>::value_type;
    SystemRun<Out, S> result{{}, std::move(s0)};
    result.outputs.reserve(inputs.size());
    for (const In& x : inputs) {
        auto [y, next] = run(bind(f, inject<S>(x)), result.final_state);
        result.outputs.push_back(std::move(y));
        result.final_state = std::move(next);
    }
    return result;
}

}  // namespace statekit::classify
