#pragma once

// Discrete-tick reconstruction of an interactive animation installation.
//
// Units:
//   clock         tick counter -> time
//   capture_image time -> synthetic image token
//   frame_db      (layer, index) -> synthetic frame token
//   motion_sensor event trace membership
//   animate       contextual frame generator; its status is the state
//   render        frame info -> one log line
//
// Everything stateful goes through the calculus in core.hpp: `animate`
// is assembled from get/put/inject with bind, and `step` is
// `fmap(render, bind(animate_at, inject(t)))`.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "statekit/classify.hpp"
#include "statekit/core.hpp"

namespace statekit::pipeline {

using Time = classify::Time;

struct Layer {
    std::string name;
    std::int64_t period = 1;
    std::int64_t frames = 1;

    friend bool operator==(const Layer&, const Layer&) = default;
};

struct Scenario {
    std::vector<Layer> layers;
    std::int64_t trigger_duration = 1;

    friend bool operator==(const Scenario&, const Scenario&) = default;
};

struct Normal {
    friend bool operator==(Normal, Normal) = default;
};

struct Triggered {
    Time since = 0;

    friend bool operator==(Triggered, Triggered) = default;
};

using AnimStatus = std::variant<Normal, Triggered>;

struct EventTrace {
    std::vector<Time> jump_ticks;

    friend bool operator==(const EventTrace&, const EventTrace&) = default;
};

struct Overlay {
    Time since = 0;
    Time index = 0;

    friend bool operator==(Overlay, Overlay) = default;
};

struct LayerIndex {
    std::string name;
    std::int64_t index = 0;

    friend bool operator==(const LayerIndex&, const LayerIndex&) = default;
};

struct FrameInfo {
    Time t = 0;
    std::vector<LayerIndex> layer_indices;
    std::optional<Overlay> overlay;

    friend bool operator==(const FrameInfo&, const FrameInfo&) = default;
};

struct RenderedFrame {
    std::string line;

    friend bool operator==(const RenderedFrame&, const RenderedFrame&) = default;
};

template <class A>
using AnimAction = Action<AnimStatus, A>;

inline Time clock(std::int64_t tick, std::int64_t dt) { return tick * dt; }

inline std::string capture_image(Time t) { return "img@" + std::to_string(t); }

inline std::string frame_db(const std::string& layer_name, std::int64_t index) {
    return layer_name + "#" + std::to_string(index);
}

/// True when `t` is one of the trace's jump ticks.
inline bool motion_sensor(const EventTrace& trace, Time t) {
    return std::binary_search(trace.jump_ticks.begin(), trace.jump_ticks.end(), t);
}

inline std::int64_t layer_frame(const Layer& layer, Time t) {
    return (t / layer.period) % layer.frames;
}

/// Drops a finished trigger back to Normal once `duration` ticks have passed.
inline AnimAction<Unit> expire_status(Time t, std::int64_t duration) {
    return bind(
        [t, duration](const AnimStatus& s) {
            const auto* trig = std::get_if<Triggered>(&s);
            if (trig != nullptr && t - trig->since >= duration) {
                return put<AnimStatus>(Normal{});
            }
            return inject<AnimStatus>(unit);
        },
        get<AnimStatus>());
}

/// Starts a trigger at `t` when idle. Jumps during an active trigger are
/// ignored.
inline AnimAction<Unit> trigger_status(Time t, bool jumping) {
    return bind(
        [t, jumping](const AnimStatus& s) {
            if (jumping && std::holds_alternative<Normal>(s)) {
                return put<AnimStatus>(Triggered{t});
            }
            return inject<AnimStatus>(unit);
        },
        get<AnimStatus>());
}

inline FrameInfo describe_frame(const Scenario& sc, Time t, const AnimStatus& status) {
    FrameInfo fi;
    fi.t = t;
    fi.layer_indices.reserve(sc.layers.size());
    for (const Layer& layer : sc.layers) {
        fi.layer_indices.push_back({layer.name, layer_frame(layer, t)});
    }
    if (const auto* trig = std::get_if<Triggered>(&status)) {
        fi.overlay = Overlay{trig->since, t - trig->since};
    }
    return fi;
}

/// Expiry, then trigger, then output from the final status.
inline AnimAction<FrameInfo> animate(const Scenario& sc, Time t, bool jumping) {
    return then(expire_status(t, sc.trigger_duration),
                then(trigger_status(t, jumping),
                     fmap([sc, t](const AnimStatus& s) { return describe_frame(sc, t, s); },
                          get<AnimStatus>())));
}

/// `<frame t="T"><layer name="N" index="I"/>...[<overlay since="S" index="J"/>]</frame>`
inline std::string emit_frame_xml(const FrameInfo& fi) {
    std::string out = "<frame t=\"" + std::to_string(fi.t) + "\">";
    for (const auto& li : fi.layer_indices) {
        out += "<layer name=\"" + li.name + "\" index=\"" + std::to_string(li.index) + "\"/>";
    }
    if (fi.overlay) {
        out += "<overlay since=\"" + std::to_string(fi.overlay->since) + "\" index=\"" +
               std::to_string(fi.overlay->index) + "\"/>";
    }
    out += "</frame>";
    return out;
}

/// `t=<T> <name>[<I>] ... [+overlay[<J>]]`
inline RenderedFrame render(const FrameInfo& fi) {
    std::string line = "t=" + std::to_string(fi.t);
    for (const auto& li : fi.layer_indices) {
        line += ' ';
        line += li.name;
        line += '[' + std::to_string(li.index) + ']';
    }
    if (fi.overlay) {
        line += " +overlay[" + std::to_string(fi.overlay->index) + ']';
    }
    return {std::move(line)};
}

inline AnimAction<FrameInfo> generate(const Scenario& sc, const EventTrace& trace, Time t) {
    return bind([sc, trace](const Time& now) { return animate(sc, now, motion_sensor(trace, now)); },
                inject<AnimStatus>(t));
}

inline AnimAction<RenderedFrame> step(const Scenario& sc, const EventTrace& trace, Time t) {
    return fmap(render, generate(sc, trace, t));
}

/// Runs `stepper(clock(i, dt))` for i in [0, n_ticks), threading the status
/// from Normal.
template <class Out, class Stepper>
std::vector<Out> fold_ticks(std::int64_t n_ticks, std::int64_t dt, Stepper&& stepper) {
    std::vector<Out> out;
    if (n_ticks <= 0) {
        return out;
    }
    out.reserve(static_cast<std::size_t>(n_ticks));
    AnimStatus status = Normal{};
    for (std::int64_t i = 0; i < n_ticks; ++i) {
        auto [value, next] = run(stepper(clock(i, dt)), status);
        out.push_back(std::move(value));
        status = std::move(next);
    }
    return out;
}

inline std::vector<RenderedFrame> simulate(const Scenario& sc, const EventTrace& trace,
                                           std::int64_t n_ticks, std::int64_t dt) {
    return fold_ticks<RenderedFrame>(n_ticks, dt, [&](Time t) { return step(sc, trace, t); });
}

/// Same fold as `simulate`, keeping the structured frame information.
inline std::vector<FrameInfo> simulate_frames(const Scenario& sc, const EventTrace& trace,
                                              std::int64_t n_ticks, std::int64_t dt) {
    return fold_ticks<FrameInfo>(n_ticks, dt, [&](Time t) { return generate(sc, trace, t); });
}

}  // namespace statekit::pipeline
