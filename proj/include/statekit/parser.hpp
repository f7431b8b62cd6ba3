#pragma once

// Parser combinators over the state-threading calculus.
//
// The threaded state is a cursor into the input; failure travels in the
// value (ParseOutcome), so the state monad from core.hpp is used as is.
// Every combinator is written with bind/inject/fmap/get/put (and `run` for
// the repetition loops); none of them builds an action by hand.
//
// Cursor contract: a successful parser never moves the cursor backwards, a
// failing combinator leaves the cursor where it found it.

#include <cctype>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "statekit/core.hpp"
#include "statekit/pipeline.hpp"

namespace statekit::parser {

struct ParserState {
    std::string_view input;
    std::size_t offset = 0;

    friend bool operator==(const ParserState& a, const ParserState& b) {
        return a.offset == b.offset && a.input == b.input;
    }
};

struct Failure {
    std::string message;
    std::size_t at = 0;

    friend bool operator==(const Failure&, const Failure&) = default;
};

template <class A>
class ParseOutcome {
public:
    using value_type = A;

    static ParseOutcome success(A value) { return ParseOutcome(std::move(value)); }
    static ParseOutcome failure(Failure f) { return ParseOutcome(std::move(f)); }

    bool ok() const { return v_.index() == 0; }
    const A& value() const { return std::get<0>(v_); }
    const Failure& failure() const { return std::get<1>(v_); }

    template <class F>
    auto map(const F& f) const {
        using B = std::decay_t<std::invoke_result_t<const F&, const A&>>;
        return ok() ? ParseOutcome<B>::success(f(value())) : ParseOutcome<B>::failure(failure());
    }

    friend bool operator==(const ParseOutcome&, const ParseOutcome&) = default;

private:
    explicit ParseOutcome(A value) : v_(std::in_place_index<0>, std::move(value)) {}
    explicit ParseOutcome(Failure f) : v_(std::in_place_index<1>, std::move(f)) {}

    std::variant<A, Failure> v_;
};

template <class A>
using Parser = Action<ParserState, ParseOutcome<A>>;

template <class P>
using parsed_t = typename P::value_type::value_type;

template <class A>
Parser<A> succeed(A value) {
    return inject<ParserState>(ParseOutcome<A>::success(std::move(value)));
}

template <class A>
Parser<A> fail_at(std::string message, std::size_t at) {
    return inject<ParserState>(ParseOutcome<A>::failure({std::move(message), at}));
}

template <class A>
Parser<A> fail_here(std::string message) {
    return bind([message = std::move(message)](const ParserState& st) {
        return fail_at<A>(message, st.offset);
    }, get<ParserState>());
}

/// Runs `p`; on failure puts the cursor back where `p` started.
template <class A>
Parser<A> attempt(Parser<A> p) {
    return bind([p = std::move(p)](const ParserState& start) {
        return bind([start](const ParseOutcome<A>& out) {
            if (out.ok()) {
                return inject<ParserState>(out);
            }
            return then(put(start), inject<ParserState>(out));
        }, p);
    }, get<ParserState>());
}

/// Parser-level sequencing: feeds a successful value to `k`, short-circuits
/// on failure.
template <class A, class K>
auto chain(Parser<A> p, K k) {
    using Next = std::invoke_result_t<const K&, const A&>;
    using B = parsed_t<Next>;
    return attempt<B>(bind([k = std::move(k)](const ParseOutcome<A>& out) -> Parser<B> {
        if (out.ok()) {
            return k(out.value());
        }
        return fail_at<B>(out.failure().message, out.failure().at);
    }, std::move(p)));
}

template <class F, class A>
auto pmap(F f, Parser<A> p) {
    return fmap([f = std::move(f)](const ParseOutcome<A>& out) { return out.map(f); }, std::move(p));
}

/// Keeps the failure position, replaces the message.
template <class A>
Parser<A> label(Parser<A> p, std::string message) {
    return fmap([message = std::move(message)](const ParseOutcome<A>& out) {
        return out.ok() ? out : ParseOutcome<A>::failure({message, out.failure().at});
    }, std::move(p));
}

template <class Pred>
Parser<char> p_satisfy(Pred pred, std::string expected = "matching character") {
    return bind([pred = std::move(pred), expected = std::move(expected)](const ParserState& st) {
        if (st.offset >= st.input.size()) {
            return fail_at<char>("unexpected end of input", st.offset);
        }
        const char c = st.input[st.offset];
        if (!pred(c)) {
            return fail_at<char>("expected " + expected, st.offset);
        }
        return then(put(ParserState{st.input, st.offset + 1}), succeed(c));
    }, get<ParserState>());
}

inline Parser<std::string> p_literal(std::string word) {
    if (word.empty()) {
        throw std::invalid_argument("p_literal: empty word");
    }
    return bind([word = std::move(word)](const ParserState& st) {
        if (st.input.substr(st.offset).substr(0, word.size()) != word) {
            return fail_at<std::string>("expected '" + word + "'", st.offset);
        }
        return then(put(ParserState{st.input, st.offset + word.size()}), succeed(word));
    }, get<ParserState>());
}

/// Zero or more repetitions. Stops at the first failure of `p`, leaving the
/// cursor after the last success. A repetition that succeeds without
/// consuming input fails the whole parser.
template <class A>
Parser<std::vector<A>> p_many(Parser<A> p) {
    return bind([p = std::move(p)](const ParserState& start) {
        std::vector<A> items;
        ParserState cur = start;
        for (;;) {
            auto [out, next] = run(p, cur);
            if (!out.ok()) {
                break;
            }
            if (next.offset <= cur.offset) {
                return fail_at<std::vector<A>>("non-progressing parser", cur.offset);
            }
            items.push_back(out.value());
            cur = next;
        }
        return then(put(cur), succeed(std::move(items)));
    }, get<ParserState>());
}

template <class A>
Parser<std::vector<A>> p_many1(Parser<A> p) {
    return chain(p, [p](const A& first) {
        return pmap([first](const std::vector<A>& rest) {
            std::vector<A> all;
            all.reserve(rest.size() + 1);
            all.push_back(first);
            all.insert(all.end(), rest.begin(), rest.end());
            return all;
        }, p_many(p));
    });
}

/// Tries `a`; on failure rewinds and tries `b`. Reports `b`'s failure when
/// both fail.
template <class A>
Parser<A> p_choice(Parser<A> a, Parser<A> b) {
    return bind([a = std::move(a), b = std::move(b)](const ParserState& start) {
        return bind([start, b](const ParseOutcome<A>& out) {
            if (out.ok()) {
                return inject<ParserState>(out);
            }
            return then(put(start), attempt(b));
        }, a);
    }, get<ParserState>());
}

template <class A>
Parser<std::optional<A>> p_optional(Parser<A> p) {
    return p_choice(pmap([](const A& v) { return std::optional<A>(v); }, std::move(p)),
                    succeed(std::optional<A>{}));
}

inline Parser<Unit> p_eof() {
    return bind([](const ParserState& st) {
        return st.offset == st.input.size() ? succeed(unit)
                                            : fail_at<Unit>("expected end of input", st.offset);
    }, get<ParserState>());
}

/// Repeats `p` until the input is exhausted; the first failure of `p` is the
/// result.
template <class A>
Parser<std::vector<A>> p_until_end(Parser<A> p) {
    return bind([p = std::move(p)](const ParserState& start) {
        std::vector<A> items;
        ParserState cur = start;
        while (cur.offset < cur.input.size()) {
            auto [out, next] = run(p, cur);
            if (!out.ok()) {
                return fail_at<std::vector<A>>(out.failure().message, out.failure().at);
            }
            if (next.offset <= cur.offset) {
                return fail_at<std::vector<A>>("non-progressing parser", cur.offset);
            }
            items.push_back(out.value());
            cur = next;
        }
        return then(put(cur), succeed(std::move(items)));
    }, get<ParserState>());
}

// Tokens shared by the scenario and trace formats.

inline bool is_blank(char c) { return c == ' ' || c == '\t' || c == '\r'; }
inline bool is_digit(char c) { return c >= '0' && c <= '9'; }
inline bool is_alpha(char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z'); }
inline bool is_ident_char(char c) { return is_alpha(c) || is_digit(c) || c == '_'; }

inline std::string to_string(const std::vector<char>& chars) {
    return {chars.begin(), chars.end()};
}

inline Parser<Unit> p_hspace() {
    return pmap([](const std::vector<char>&) { return unit; }, p_many(p_satisfy(is_blank, "whitespace")));
}

inline Parser<Unit> p_hspace1() {
    return chain(p_satisfy(is_blank, "whitespace"), [](char) { return p_hspace(); });
}

inline Parser<std::string> p_identifier() {
    auto rest = p_many(p_satisfy(is_ident_char, "identifier character"));
    return label(chain(p_satisfy(is_alpha, "letter"), [rest](char first) {
        return pmap([first](const std::vector<char>& tail) { return first + to_string(tail); }, rest);
    }), "expected identifier");
}

/// Optional leading '-', then decimal digits; must fit in 64 bits.
inline Parser<std::int64_t> p_integer() {
    auto digits = pmap(to_string, p_many1(p_satisfy(is_digit, "digit")));
    auto sign = p_optional(p_literal("-"));
    auto text = chain(sign, [digits](const std::optional<std::string>& minus) {
        return pmap([neg = minus.has_value()](const std::string& d) { return (neg ? "-" : "") + d; },
                    digits);
    });
    return bind([text = label(text, "expected integer")](const ParserState& start) {
        return chain(text, [at = start.offset](const std::string& s) {
            std::int64_t v = 0;
            const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
            if (ec != std::errc{} || ptr != s.data() + s.size()) {
                return fail_at<std::int64_t>("integer out of range", at);
            }
            return succeed(v);
        });
    }, get<ParserState>());
}

inline Parser<Unit> p_comment() {
    return chain(p_literal("#"), [](const std::string&) {
        return pmap([](const std::vector<char>&) { return unit; },
                    p_many(p_satisfy([](char c) { return c != '\n'; })));
    });
}

/// A line feed, or the end of input.
inline Parser<Unit> p_line_end() {
    return bind([](const ParserState& st) {
        if (st.offset == st.input.size()) {
            return succeed(unit);
        }
        if (st.input[st.offset] == '\n') {
            return then(put(ParserState{st.input, st.offset + 1}), succeed(unit));
        }
        return fail_at<Unit>("expected end of line", st.offset);
    }, get<ParserState>());
}

/// Trailing blanks, an optional comment, then the line end.
inline Parser<Unit> p_line_tail() {
    return chain(p_hspace(), [](Unit) {
        return chain(p_optional(p_comment()), [](const std::optional<Unit>&) { return p_line_end(); });
    });
}

/// One physical line: blank, comment-only, or a single directive.
template <class D>
Parser<std::optional<D>> p_line(Parser<D> directive) {
    auto blank = pmap([](Unit) { return std::optional<D>{}; },
                      chain(p_optional(p_comment()), [](const std::optional<Unit>&) { return p_line_end(); }));
    auto filled = chain(directive, [](const D& d) {
        return pmap([d](Unit) { return std::optional<D>(d); }, p_line_tail());
    });
    return chain(p_hspace(), [blank, filled](Unit) { return p_choice(blank, filled); });
}

/// Reads a keyword at the start of a directive and hands it, with its
/// offset, to `dispatch`.
template <class Dispatch>
auto p_directive(Dispatch dispatch) {
    return bind([dispatch = std::move(dispatch)](const ParserState& start) {
        return chain(p_identifier(), [dispatch, at = start.offset](const std::string& keyword) {
            return dispatch(keyword, at);
        });
    }, get<ParserState>());
}

/// Runs `p` from offset 0 of `text`.
template <class A>
ValueStatePair<ParseOutcome<A>, ParserState> parse(const Parser<A>& p, std::string_view text) {
    return run(p, ParserState{text, 0});
}

// Scenario and event-trace files.

struct ParseError {
    std::string message;
    std::size_t offset = 0;
    std::size_t line = 1;

    /// `parse error at line <L>, offset <O>: <message>`
    std::string to_string() const {
        return "parse error at line " + std::to_string(line) + ", offset " + std::to_string(offset) +
               ": " + message;
    }

    friend bool operator==(const ParseError&, const ParseError&) = default;
};

template <class T>
class ParseResult {
public:
    ParseResult(T value) : v_(std::move(value)) {}
    ParseResult(ParseError error) : v_(std::move(error)) {}

    bool ok() const { return std::holds_alternative<T>(v_); }
    explicit operator bool() const { return ok(); }
    const T& value() const { return std::get<T>(v_); }
    const ParseError& error() const { return std::get<ParseError>(v_); }

private:
    std::variant<T, ParseError> v_;
};

inline std::size_t line_of(std::string_view text, std::size_t offset) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
        }
    }
    return line;
}

inline ParseError make_error(std::string_view text, std::string message, std::size_t offset) {
    return {std::move(message), offset, line_of(text, offset)};
}

struct TriggerDirective {
    std::int64_t duration = 0;
    std::size_t at = 0;
};

struct LayerDirective {
    pipeline::Layer layer;
    std::size_t at = 0;
};

using ScenarioDirective = std::variant<TriggerDirective, LayerDirective>;

struct JumpDirective {
    std::int64_t tick = 0;
    std::size_t at = 0;
};

inline Parser<ScenarioDirective> p_scenario_directive() {
    return p_directive([](const std::string& keyword, std::size_t at) -> Parser<ScenarioDirective> {
        if (keyword == "trigger_duration") {
            return chain(p_hspace1(), [at](Unit) {
                return pmap([at](std::int64_t d) { return ScenarioDirective(TriggerDirective{d, at}); },
                            p_integer());
            });
        }
        if (keyword == "layer") {
            return chain(p_hspace1(), [at](Unit) {
                return chain(p_identifier(), [at](const std::string& name) {
                    return chain(p_hspace1(), [at, name](Unit) {
                        return chain(p_integer(), [at, name](std::int64_t period) {
                            return chain(p_hspace1(), [at, name, period](Unit) {
                                return pmap([at, name, period](std::int64_t frames) {
                                    return ScenarioDirective(LayerDirective{{name, period, frames}, at});
                                }, p_integer());
                            });
                        });
                    });
                });
            });
        }
        return fail_at<ScenarioDirective>("unknown directive '" + keyword + "'", at);
    });
}

inline Parser<JumpDirective> p_trace_directive() {
    return p_directive([](const std::string& keyword, std::size_t at) -> Parser<JumpDirective> {
        if (keyword == "jump") {
            return chain(p_hspace1(), [at](Unit) {
                return pmap([at](std::int64_t t) { return JumpDirective{t, at}; }, p_integer());
            });
        }
        return fail_at<JumpDirective>("unknown directive '" + keyword + "'", at);
    });
}

template <class D>
ParseResult<std::vector<D>> parse_directives(std::string_view text, const Parser<D>& directive) {
    const auto [out, cursor] = parse(p_until_end(p_line(directive)), text);
    if (!out.ok()) {
        return make_error(text, out.failure().message, out.failure().at);
    }
    std::vector<D> found;
    for (const auto& line : out.value()) {
        if (line) {
            found.push_back(*line);
        }
    }
    return found;
}

inline ParseResult<pipeline::EventTrace> parse_trace(std::string_view text) {
    auto directives = parse_directives(text, p_trace_directive());
    if (!directives) {
        return directives.error();
    }
    pipeline::EventTrace trace;
    for (const JumpDirective& jump : directives.value()) {
        if (jump.tick < 0) {
            return make_error(text, "negative jump tick " + std::to_string(jump.tick), jump.at);
        }
        if (!trace.jump_ticks.empty() && jump.tick <= trace.jump_ticks.back()) {
            return make_error(text, "non-increasing jump tick " + std::to_string(jump.tick), jump.at);
        }
        trace.jump_ticks.push_back(jump.tick);
    }
    return trace;
}

inline ParseResult<pipeline::Scenario> parse_scenario(std::string_view text) {
    auto directives = parse_directives(text, p_scenario_directive());
    if (!directives) {
        return directives.error();
    }
    pipeline::Scenario sc;
    bool have_duration = false;
    std::set<std::string> names;
    for (const ScenarioDirective& d : directives.value()) {
        if (const auto* trig = std::get_if<TriggerDirective>(&d)) {
            if (have_duration) {
                return make_error(text, "duplicate trigger_duration", trig->at);
            }
            if (trig->duration < 1) {
                return make_error(text, "trigger_duration must be >= 1", trig->at);
            }
            have_duration = true;
            sc.trigger_duration = trig->duration;
            continue;
        }
        const auto& ld = std::get<LayerDirective>(d);
        if (ld.layer.period < 1) {
            return make_error(text, "layer period must be >= 1", ld.at);
        }
        if (ld.layer.frames < 1) {
            return make_error(text, "layer frames must be >= 1", ld.at);
        }
        if (!names.insert(ld.layer.name).second) {
            return make_error(text, "duplicate layer name '" + ld.layer.name + "'", ld.at);
        }
        sc.layers.push_back(ld.layer);
    }
    if (!have_duration) {
        return make_error(text, "missing trigger_duration", text.size());
    }
    if (sc.layers.empty()) {
        return make_error(text, "scenario has no layers", text.size());
    }
    return sc;
}

inline std::string serialize_scenario(const pipeline::Scenario& sc) {
    std::string out = "trigger_duration " + std::to_string(sc.trigger_duration) + "\n";
    for (const auto& layer : sc.layers) {
        out += "layer " + layer.name + " " + std::to_string(layer.period) + " " +
               std::to_string(layer.frames) + "\n";
    }
    return out;
}

inline std::string serialize_trace(const pipeline::EventTrace& trace) {
    std::string out;
    for (const auto t : trace.jump_ticks) {
        out += "jump " + std::to_string(t) + "\n";
    }
    return out;
}

}  // namespace statekit::parser
