#include "cheshire/scenario.hpp"

#include "cheshire/quantum_weak.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <optional>
#include <vector>

namespace cheshire {

namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

std::vector<std::string_view> split_words(std::string_view s) {
    std::vector<std::string_view> words;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && is_space(s[i])) {
            ++i;
        }
        const std::size_t begin = i;
        while (i < s.size() && !is_space(s[i])) {
            ++i;
        }
        if (i > begin) {
            words.push_back(s.substr(begin, i - begin));
        }
    }
    return words;
}

std::string quoted(std::string_view s) { return "'" + std::string(s) + "'"; }

// Parses one directive line into the scenario being built.
class LineParser {
public:
    LineParser(Scenario &out, std::size_t line) : out_(out), line_(line) {}

    void parse(std::string_view text) {
        if (const auto hash = text.find('#'); hash != std::string_view::npos) {
            text = text.substr(0, hash);
        }
        const auto head_and_body = text.find(':');
        if (head_and_body == std::string_view::npos) {
            if (split_words(text).empty()) {
                return;
            }
            fail("expected '<directive>: <arguments>'");
        }
        const auto head = split_words(text.substr(0, head_and_body));
        words_ = split_words(text.substr(head_and_body + 1));

        if (head.empty()) {
            fail("missing directive before ':'");
        }
        const std::string keyword = lower(head[0]);
        if (keyword == "arm") {
            if (head.size() != 2) {
                fail("expected 'arm L:' or 'arm R:'");
            }
            const std::string side = lower(head[1]);
            if (side == "l") {
                parse_arm(out_.left);
            } else if (side == "r") {
                parse_arm(out_.right);
            } else {
                fail("unknown arm " + quoted(head[1]) + ", expected L or R");
            }
            return;
        }
        if (head.size() != 1) {
            fail("unexpected " + quoted(head[1]) + " before ':'");
        }
        if (keyword == "imperfect") {
            parse_imperfect();
        } else if (keyword == "sweep") {
            parse_sweep();
        } else if (keyword == "postselect") {
            parse_postselect();
        } else if (keyword == "model") {
            parse_model();
        } else {
            fail("unknown directive " + quoted(head[0]));
        }
    }

private:
    [[noreturn]] void fail(const std::string &message) const { throw ParseError(line_, message); }

    std::string_view next(const char *what) {
        if (pos_ >= words_.size()) {
            fail(std::string("missing ") + what);
        }
        return words_[pos_++];
    }

    void finish() const {
        if (pos_ < words_.size()) {
            fail("unexpected trailing token " + quoted(words_[pos_]));
        }
    }

    double real(std::string_view token, const char *what) const {
        std::string_view digits = token;
        if (!digits.empty() && digits.front() == '+') {
            digits.remove_prefix(1);
        }
        double value = 0.0;
        const auto [end, ec] =
            std::from_chars(digits.data(), digits.data() + digits.size(), value);
        if (digits.empty() || ec != std::errc{} || end != digits.data() + digits.size() ||
            !std::isfinite(value)) {
            fail(std::string("malformed ") + what + " " + quoted(token));
        }
        return value;
    }

    double number(const char *what) { return real(next(what), what); }

    // `<x>`, `<x>deg` or `<x> deg`
    double angle(const char *what) {
        std::string_view token = next(what);
        bool degrees = false;
        if (token.size() > 3 && lower(token.substr(token.size() - 3)) == "deg") {
            token.remove_suffix(3);
            degrees = true;
        } else if (pos_ < words_.size() && lower(words_[pos_]) == "deg") {
            ++pos_;
            degrees = true;
        }
        const double value = real(token, what);
        return degrees ? value * std::numbers::pi / 180.0 : value;
    }

    void parse_arm(ArmConfig &arm) {
        const std::string kind = lower(next("element"));
        OpticalElement element;
        if (kind == "attenuate") {
            element = Attenuate{number("transmission")};
        } else if (kind == "hwp") {
            element = Hwp{angle("hwp angle")};
        } else if (kind == "phase") {
            element = PhaseShift{angle("phase angle")};
        } else {
            fail("unknown element " + quoted(kind) + ", expected attenuate, hwp or phase");
        }
        finish();
        try {
            (void)jones_of(element);
        } catch (const std::invalid_argument &e) {
            fail(e.what());
        }
        arm.elements.push_back(element);
    }

    void parse_imperfect() {
        const std::string key = lower(next("imperfection name"));
        Imperfections updated = out_.imperfections;
        if (key == "visibility") {
            updated.visibility = number("visibility");
        } else if (key == "imbalance") {
            updated.arm_power_imbalance = number("imbalance");
        } else if (key == "leak") {
            updated.preselect_leak_angle = angle("leak angle");
        } else {
            fail("unknown imperfection " + quoted(key) + ", expected visibility, imbalance or leak");
        }
        finish();
        try {
            updated.validate();
        } catch (const std::invalid_argument &e) {
            fail(e.what());
        }
        out_.imperfections = updated;
    }

    void parse_sweep() {
        SweepGrid grid;
        grid.start = angle("sweep start");
        grid.end = angle("sweep end");
        const std::string_view steps = next("sweep steps");
        unsigned long long n = 0;
        const auto [end, ec] = std::from_chars(steps.data(), steps.data() + steps.size(), n);
        if (ec != std::errc{} || end != steps.data() + steps.size()) {
            fail("malformed sweep steps " + quoted(steps));
        }
        finish();
        if (n < 2 || n > kMaxSweepSteps) {
            fail("sweep steps must lie in [2, " + std::to_string(kMaxSweepSteps) + "]");
        }
        if (!(grid.end > grid.start)) {
            fail("sweep end must exceed start");
        }
        grid.steps = static_cast<std::size_t>(n);
        out_.sweep = grid;
    }

    void parse_postselect() {
        const std::string axis = lower(next("polarizer axis"));
        finish();
        if (axis == "h") {
            out_.postselect = Axis::H;
        } else if (axis == "v") {
            out_.postselect = Axis::V;
        } else {
            fail("unknown polarizer axis " + quoted(axis) + ", expected H or V");
        }
    }

    void parse_model() {
        const std::string model = lower(next("model"));
        finish();
        if (model == "classical") {
            out_.models = {true, false};
        } else if (model == "quantum") {
            out_.models = {false, true};
        } else if (model == "both") {
            out_.models = {true, true};
        } else {
            fail("unknown model " + quoted(model) + ", expected classical, quantum or both");
        }
    }

    Scenario &out_;
    std::size_t line_;
    std::vector<std::string_view> words_;
    std::size_t pos_ = 0;
};

std::size_t parse_lines(Scenario &out, std::string_view text) {
    std::size_t line = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view current = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line;
        if (!current.empty() && current.back() == '\r') {
            current.remove_suffix(1);
        }
        LineParser(out, line).parse(current);
    }
    return line;
}

std::string format_real(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

} // namespace

ParseError::ParseError(std::size_t line, const std::string &message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line),
      message_(message) {}

Scenario parse_scenario(std::string_view text) {
    Scenario s;
    parse_lines(s, text);
    return s;
}

Scenario parse_scenario(std::string_view text, std::span<const std::string> overrides) {
    Scenario s;
    std::size_t line = parse_lines(s, text);
    for (const auto &kv : overrides) {
        ++line;
        const auto eq = kv.find('=');
        if (eq == std::string::npos) {
            throw ParseError(line, "override " + quoted(kv) + " is not key=value");
        }
        std::string directive = kv;
        directive[eq] = ':';
        if (directive.find_first_of("\n\r") != std::string::npos) {
            throw ParseError(line, "override " + quoted(kv) + " spans several lines");
        }
        LineParser(s, line).parse(directive);
    }
    return s;
}

std::string print_scenario(const Scenario &s) {
    std::string out;
    auto arm = [&out](const char *side, const ArmConfig &config) {
        for (const auto &element : config.elements) {
            out += "arm ";
            out += side;
            out += ": ";
            if (const auto *a = std::get_if<Attenuate>(&element)) {
                out += "attenuate " + format_real(a->transmission);
            } else if (const auto *w = std::get_if<Hwp>(&element)) {
                out += "hwp " + format_real(w->theta_eff);
            } else if (const auto *p = std::get_if<PhaseShift>(&element)) {
                out += "phase " + format_real(p->phi);
            }
            out += '\n';
        }
    };
    arm("L", s.left);
    arm("R", s.right);
    out += "imperfect: visibility " + format_real(s.imperfections.visibility) + '\n';
    out += "imperfect: imbalance " + format_real(s.imperfections.arm_power_imbalance) + '\n';
    out += "imperfect: leak " + format_real(s.imperfections.preselect_leak_angle) + '\n';
    out += "sweep: " + format_real(s.sweep.start) + ' ' + format_real(s.sweep.end) + ' ' +
           std::to_string(s.sweep.steps) + '\n';
    out += std::string("postselect: ") + (s.postselect == Axis::H ? "H" : "V") + '\n';
    const char *model = !s.models.quantum  ? "classical"
                        : s.models.classical ? "both"
                                             : "quantum";
    out += std::string("model: ") + model + '\n';
    return out;
}

SweepResult run_sweep(const Scenario &s) {
    SweepResult result;
    result.has_quantum = s.models.quantum;
    result.rows.resize(s.sweep.steps);

    InterferometerSetup setup{s.left, s.right, 0.0, s.imperfections, s.postselect};
    for (std::size_t k = 0; k < s.sweep.steps; ++k) {
        SweepRow &row = result.rows[k];
        row.phi = s.sweep.phi(k);
        setup.phase = row.phi;
        const DetectorReadout readout = propagate(setup);
        row.d1_postselected = readout.d1_postselected;
        row.d1_total = readout.d1_total;
        row.d2_total = readout.d2_total;
        if (result.has_quantum) {
            row.quantum_d1 = postselected_probability(s.left, s.right, row.phi, s.postselect);
        }
    }
    return result;
}

} // namespace cheshire
