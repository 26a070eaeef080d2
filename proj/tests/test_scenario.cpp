#include "cheshire/scenario.hpp"

#include "cheshire/bundled.hpp"
#include "test_support.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

namespace cheshire {
namespace {

using testing::Gen;

constexpr double kPi = std::numbers::pi;

std::size_t parse_error_line(std::string_view text) {
    try {
        parse_scenario(text);
    } catch (const ParseError &e) {
        return e.line();
    }
    return 0;
}

TEST(ParseScenario, SingleDirectiveTakesDefaults) {
    const Scenario s = parse_scenario("arm L: attenuate 0.63");
    EXPECT_EQ(s.left.elements, std::vector<OpticalElement>{Attenuate{0.63}});
    EXPECT_TRUE(s.right.elements.empty());
    EXPECT_EQ(s.imperfections, Imperfections::ideal());
    EXPECT_EQ(s.sweep, SweepGrid{});
    EXPECT_EQ(s.sweep.steps, 128u);
    EXPECT_EQ(s.sweep.start, 0.0);
    EXPECT_EQ(s.sweep.end, 2 * kPi);
    EXPECT_EQ(s.postselect, Axis::H);
    EXPECT_EQ(s.models, (ModelSet{true, true}));
}

TEST(ParseScenario, DegreeSuffix) {
    const Scenario s = parse_scenario("arm R: hwp 10deg");
    ASSERT_EQ(s.right.elements.size(), 1u);
    EXPECT_DOUBLE_EQ(std::get<Hwp>(s.right.elements[0]).theta_eff, 0.17453292519943295);
    EXPECT_EQ(parse_scenario("arm R: hwp 10 DEG"), s);
}

TEST(ParseScenario, TransmissionOutOfRange) {
    try {
        parse_scenario("arm L: attenuate 1.5");
        FAIL() << "expected ParseError";
    } catch (const ParseError &e) {
        EXPECT_EQ(e.line(), 1u);
        EXPECT_NE(e.message().find("transmission"), std::string::npos) << e.message();
        EXPECT_EQ(std::string(e.what()).rfind("line 1: ", 0), 0u);
    }
}

TEST(ParseScenario, FullGrammar) {
    const Scenario s = parse_scenario(R"(# comment line
ARM l: Attenuate 0.5   # trailing comment
arm L: phase 90deg
arm r: hwp -0.25

Imperfect: visibility 0.9
imperfect: imbalance -0.1
imperfect: leak 2deg
sweep: 0 720deg 64
postselect: v
model: classical
)");
    EXPECT_EQ(s.left.elements,
              (std::vector<OpticalElement>{Attenuate{0.5}, PhaseShift{kPi / 2}}));
    EXPECT_EQ(s.right.elements, std::vector<OpticalElement>{Hwp{-0.25}});
    EXPECT_EQ(s.imperfections.visibility, 0.9);
    EXPECT_EQ(s.imperfections.arm_power_imbalance, -0.1);
    EXPECT_DOUBLE_EQ(s.imperfections.preselect_leak_angle, 2 * kPi / 180);
    EXPECT_DOUBLE_EQ(s.sweep.end, 4 * kPi);
    EXPECT_EQ(s.sweep.steps, 64u);
    EXPECT_EQ(s.postselect, Axis::V);
    EXPECT_EQ(s.models, (ModelSet{true, false}));
}

TEST(ParseScenario, LaterDirectivesOverwrite) {
    const Scenario s = parse_scenario("model: quantum\nmodel: both\nimperfect: visibility 0.5\n"
                                      "imperfect: visibility 0.7\r\n");
    EXPECT_EQ(s.models, (ModelSet{true, true}));
    EXPECT_EQ(s.imperfections.visibility, 0.7);
}

TEST(ParseScenario, LineNumberedDiagnostics) {
    EXPECT_EQ(parse_error_line("# ok\n\nfrobnicate: 1\n"), 3u);
    EXPECT_EQ(parse_error_line("arm L: attenuate 0.5x"), 1u);
    EXPECT_EQ(parse_error_line("arm L: attenuate"), 1u);
    EXPECT_EQ(parse_error_line("arm L: attenuate 0.5 0.6"), 1u);
    EXPECT_EQ(parse_error_line("arm Q: hwp 1"), 1u);
    EXPECT_EQ(parse_error_line("arm: hwp 1"), 1u);
    EXPECT_EQ(parse_error_line("arm L: mirror 1"), 1u);
    EXPECT_EQ(parse_error_line("\narm L hwp 1"), 2u);
    EXPECT_EQ(parse_error_line("imperfect: visibility 1.1"), 1u);
    EXPECT_EQ(parse_error_line("imperfect: imbalance -2"), 1u);
    EXPECT_EQ(parse_error_line("imperfect: sparkle 1"), 1u);
    EXPECT_EQ(parse_error_line("sweep: 0 6 1"), 1u);
    EXPECT_EQ(parse_error_line("sweep: 1 1 8"), 1u);
    EXPECT_EQ(parse_error_line("sweep: 0 6 -8"), 1u);
    EXPECT_EQ(parse_error_line("sweep: 0 6 8.5"), 1u);
    EXPECT_EQ(parse_error_line("sweep: 0 6 99999999999"), 1u);
    EXPECT_EQ(parse_error_line("postselect: D"), 1u);
    EXPECT_EQ(parse_error_line("model: wave"), 1u);
    EXPECT_EQ(parse_error_line("arm L: hwp nan"), 1u);
    EXPECT_EQ(parse_error_line("arm L: hwp inf"), 1u);
    EXPECT_EQ(parse_error_line("arm L: hwp 1e999"), 1u);
    EXPECT_EQ(parse_error_line(": hwp 1"), 1u);
    EXPECT_EQ(parse_error_line("sweep extra: 0 1 2"), 1u);
}

TEST(ParseScenario, Overrides) {
    const std::string text = "arm L: attenuate 0.63\n";
    const std::vector<std::string> overrides{"arm R=hwp 0.1", "imperfect=visibility 0.8",
                                             "sweep=0 6.283185307179586 16"};
    EXPECT_EQ(parse_scenario(text, overrides),
              parse_scenario(text + "arm R: hwp 0.1\nimperfect: visibility 0.8\n"
                                    "sweep: 0 6.283185307179586 16\n"));
    try {
        parse_scenario(text, std::vector<std::string>{"model=both", "noequals"});
        FAIL();
    } catch (const ParseError &e) {
        EXPECT_EQ(e.line(), 3u);
    }
}

// Properties

Scenario random_scenario(Gen &gen) {
    Scenario s;
    const auto element = [&gen]() -> OpticalElement {
        switch (gen.engine()() % 3) {
        case 0: return Attenuate{gen.uniform(0, 1)};
        case 1: return Hwp{gen.uniform(-10, 10)};
        default: return PhaseShift{gen.uniform(-10, 10)};
        }
    };
    for (auto n = gen.engine()() % 4; n > 0; --n) {
        s.left.elements.push_back(element());
    }
    for (auto n = gen.engine()() % 4; n > 0; --n) {
        s.right.elements.push_back(element());
    }
    s.imperfections = {gen.uniform(0, 1), gen.uniform(-1, 1), gen.uniform(-1, 1)};
    s.sweep.start = gen.uniform(-5, 5);
    s.sweep.end = s.sweep.start + gen.uniform(0.1, 20);
    s.sweep.steps = 2 + gen.engine()() % 500;
    s.postselect = gen.engine()() % 2 ? Axis::H : Axis::V;
    switch (gen.engine()() % 3) {
    case 0: s.models = {true, false}; break;
    case 1: s.models = {false, true}; break;
    default: s.models = {true, true}; break;
    }
    return s;
}

TEST(ScenarioProperties, PrintParseRoundTrip) {
    Gen gen(41);
    for (int trial = 0; trial < 300; ++trial) {
        const Scenario s = random_scenario(gen);
        EXPECT_EQ(parse_scenario(print_scenario(s)), s) << print_scenario(s);
    }
    for (const auto &bundled : bundled_scenarios()) {
        const Scenario s = parse_scenario(bundled.text);
        EXPECT_EQ(parse_scenario(print_scenario(s)), s) << bundled.name;
    }
}

TEST(ScenarioProperties, ParserIsTotal) {
    Gen gen(42);
    const std::vector<std::string> vocabulary{
        "arm", "L", "R", ":", "attenuate", "hwp", "phase", "imperfect", "visibility", "imbalance",
        "leak", "sweep", "postselect", "model", "H", "V", "both", "deg", "0.5", "-1", "1e308",
        "nan", "#", "\n", " ", "\t", "=", "10deg", "2", "1e-320", "+", "0x1p3", "\r\n", std::string(1, '\0')};
    for (int trial = 0; trial < 3000; ++trial) {
        std::string text;
        const bool bytes = trial % 3 == 0;
        const auto length = gen.engine()() % 60;
        for (std::size_t i = 0; i < length; ++i) {
            if (bytes) {
                text += static_cast<char>(gen.engine()() % 256);
            } else {
                text += vocabulary[gen.engine()() % vocabulary.size()];
                text += ' ';
            }
        }
        const std::size_t lines = static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')) + 1;
        try {
            const Scenario s = parse_scenario(text);
            EXPECT_EQ(parse_scenario(print_scenario(s)), s);
        } catch (const ParseError &e) {
            EXPECT_GE(e.line(), 1u);
            EXPECT_LE(e.line(), lines);
            EXPECT_FALSE(e.message().empty());
        }
    }
}

TEST(RunSweep, EmptyScenarioIsFlatAtOne) {
    const SweepResult r = run_sweep(parse_scenario(""));
    ASSERT_EQ(r.rows.size(), 128u);
    for (const auto &row : r.rows) {
        EXPECT_NEAR(row.d1_postselected, 1.0, 1e-12);
    }
}

TEST(RunSweep, TotalLeftAbsorberIsZero) {
    const SweepResult r = run_sweep(parse_scenario("arm L: attenuate 0"));
    for (const auto &row : r.rows) {
        EXPECT_EQ(row.d1_postselected, 0.0);
        EXPECT_EQ(row.quantum_d1, 0.0);
    }
}

TEST(RunSweep, RightRotationFollowsClosedForm) {
    const SweepResult r = run_sweep(parse_scenario("arm R: hwp 0.2"));
    const double s = std::sin(0.2);
    for (const auto &row : r.rows) {
        EXPECT_NEAR(row.d1_postselected, 1 + s * s + 2 * std::cos(row.phi) * s, 1e-12);
    }
}

TEST(RunSweep, GridIsUniformHalfOpen) {
    const SweepResult r = run_sweep(parse_scenario("sweep: -1 3 8"));
    ASSERT_EQ(r.rows.size(), 8u);
    for (std::size_t k = 0; k < 8; ++k) {
        EXPECT_DOUBLE_EQ(r.rows[k].phi, -1 + 0.5 * static_cast<double>(k));
    }
}

TEST(RunSweep, QuantumColumnFollowsModelSetting) {
    EXPECT_TRUE(run_sweep(parse_scenario("")).has_quantum);
    EXPECT_TRUE(run_sweep(parse_scenario("model: quantum")).has_quantum);
    EXPECT_FALSE(run_sweep(parse_scenario("model: classical")).has_quantum);
}

TEST(RunSweepProperties, ModelsAgreeWhenIdeal) {
    Gen gen(43);
    for (int trial = 0; trial < 50; ++trial) {
        Scenario s = random_scenario(gen);
        s.imperfections = Imperfections::ideal();
        s.models = {true, true};
        s.sweep.steps = 32;
        const SweepResult r = run_sweep(s);
        for (const auto &row : r.rows) {
            EXPECT_NEAR(row.quantum_d1, row.d1_postselected, 1e-12);
            EXPECT_GE(row.d1_postselected, 0.0);
            EXPECT_GE(row.d1_total, 0.0);
            EXPECT_GE(row.d2_total, 0.0);
        }
        for (std::size_t k = 1; k < r.rows.size(); ++k) {
            EXPECT_GT(r.rows[k].phi, r.rows[k - 1].phi);
        }
    }
}

TEST(Bundled, FilesOnDiskMatchEmbeddedCopies) {
    namespace fs = std::filesystem;
    std::size_t on_disk = 0;
    for (const auto &entry : fs::directory_iterator(CHESHIRE_SCENARIO_DIR)) {
        if (entry.path().extension() != ".scn") {
            continue;
        }
        ++on_disk;
        std::ifstream in(entry.path(), std::ios::binary);
        std::stringstream text;
        text << in.rdbuf();
        const auto embedded = find_bundled(entry.path().stem().string());
        ASSERT_TRUE(embedded.has_value()) << entry.path();
        EXPECT_EQ(*embedded, text.str());
    }
    EXPECT_EQ(on_disk, bundled_scenarios().size());
}

TEST(Bundled, EightFigurePanels) {
    std::vector<std::string> panels;
    for (const auto &b : bundled_scenarios()) {
        if (b.figure_panel) {
            panels.emplace_back(b.name);
        }
    }
    EXPECT_EQ(panels, (std::vector<std::string>{"fig2_absorb_L_100", "fig2_absorb_L_37",
                                                "fig2_absorb_R_100", "fig2_absorb_R_37",
                                                "fig3_rotate_L", "fig3_rotate_R",
                                                "fig4_rotL_absR", "fig4_rotR_absL"}));
    EXPECT_TRUE(find_bundled("empty").has_value());
    EXPECT_FALSE(find_bundled("missing").has_value());
}

} // namespace
} // namespace cheshire
