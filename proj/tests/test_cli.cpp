#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

#include "doctest.h"
#include "lexkit/csv.hpp"
#include "temp_files.hpp"

namespace fs = std::filesystem;

namespace {

// The binary and bundled data locations come from ctest.
std::string cli_bin() {
    const char* bin = std::getenv("LEXKIT_CLI_BIN");
    REQUIRE_MESSAGE(bin != nullptr, "LEXKIT_CLI_BIN not set");
    return bin;
}

fs::path data_dir() {
    const char* dir = std::getenv("LEXKIT_DATA_DIR");
    REQUIRE_MESSAGE(dir != nullptr, "LEXKIT_DATA_DIR not set");
    return dir;
}

struct CliResult {
    int exit_code = -1;
    std::string output;  // stdout and stderr combined
};

CliResult run_cli(const std::string& args, const TempDir& tmp,
                  const std::string& env_prefix = "") {
    fs::path capture = tmp.path() / "cli_output.txt";
    std::string cmd = "cd \"" + tmp.path().string() + "\" && " + env_prefix +
                      "\"" + cli_bin() + "\" " + args + " > \"" +
                      capture.string() + "\" 2>&1";
    int status = std::system(cmd.c_str());
    CliResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    result.output = tmp.read(capture);
    return result;
}

double to_double(const std::string& s) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    REQUIRE(ec == std::errc());
    REQUIRE(ptr == s.data() + s.size());
    return v;
}

std::vector<lexkit::csv::Row> parse_file(const TempDir& tmp, const fs::path& p) {
    return lexkit::csv::parse(tmp.read(p));
}

const std::string kTinyLexicon =
    "word,valence,seed,sentiment\n"
    "superb,1,1,Positive\n"
    "fine,0.5,0,Positive\n"
    "blamed,-1,1,Negative\n";

}  // namespace

TEST_CASE("cli build reproduces the golden demo lexicon") {
    TempDir tmp;
    auto config = (data_dir() / "demo_config.json").string();
    auto r = run_cli("build --config \"" + config + "\" -o out", tmp);
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("wrote") != std::string::npos);

    auto built = parse_file(tmp, tmp.path() / "out/sentiment_lexicon.csv");
    auto golden = lexkit::csv::parse(
        tmp.read(data_dir() / "golden/sentiment_lexicon.csv"));
    REQUIRE(built.size() == golden.size());
    REQUIRE(built.size() > 1);
    CHECK(built[0].fields ==
          std::vector<std::string>{"word", "valence", "seed", "sentiment"});
    for (std::size_t i = 1; i < built.size(); ++i) {
        REQUIRE(built[i].fields.size() == 4);
        // Same words in the same order, with the same seed and pole columns.
        CHECK(built[i].fields[0] == golden[i].fields[0]);
        CHECK(built[i].fields[2] == golden[i].fields[2]);
        CHECK(built[i].fields[3] == golden[i].fields[3]);
        // The golden valences come from a separately coded scorer, so allow
        // the last couple of floating-point digits to move.
        double got = to_double(built[i].fields[1]);
        double want = to_double(golden[i].fields[1]);
        CHECK(std::fabs(got - want) <= 1e-12);
        if (built[i].fields[2] == "1") {
            CHECK(std::fabs(got) == 1.0);  // seeds pinned exactly
        }
    }

    // Pole extremes are exact after normalization.
    CHECK(to_double(built[1].fields[1]) == 1.0);
    CHECK(to_double(built[built.size() - 1].fields[1]) == -1.0);

    SUBCASE("rebuilding is byte-identical") {
        auto r2 = run_cli("build --config \"" + config + "\" -o out2", tmp);
        CHECK(r2.exit_code == 0);
        CHECK(tmp.read(tmp.path() / "out/sentiment_lexicon.csv") ==
              tmp.read(tmp.path() / "out2/sentiment_lexicon.csv"));
        CHECK(tmp.read(tmp.path() / "out/sentiment_lexicon.provenance.json") ==
              tmp.read(tmp.path() / "out2/sentiment_lexicon.provenance.json"));
    }

    SUBCASE("provenance records the inputs") {
        auto prov = tmp.read(tmp.path() / "out/sentiment_lexicon.provenance.json");
        CHECK(prov.find("\"embedding_source\": \"demo_embedding.txt:") !=
              std::string::npos);
        CHECK(prov.find("\"seed_digest\"") != std::string::npos);
        CHECK(prov.find("\"dropped_seeds\": []") != std::string::npos);
        // No absolute paths leak into the sidecar.
        CHECK(prov.find(data_dir().string()) == std::string::npos);
        CHECK(prov.find(tmp.path().string()) == std::string::npos);
    }
}

TEST_CASE("cli exit codes") {
    TempDir tmp;
    SUBCASE("missing embeddings path is a config error naming the path") {
        tmp.file("seeds.csv", "word,pole\nup,Positive\ndown,Negative\n");
        auto r = run_cli("build --embeddings no_such_file.txt --seeds seeds.csv",
                        tmp);
        CHECK(r.exit_code == 2);
        CHECK(r.output.find("no_such_file.txt") != std::string::npos);
    }
    SUBCASE("no subcommand") {
        auto r = run_cli("", tmp);
        CHECK(r.exit_code == 2);
    }
    SUBCASE("help exits cleanly") {
        auto r = run_cli("--help", tmp);
        CHECK(r.exit_code == 0);
        CHECK(r.output.find("build") != std::string::npos);
    }
    SUBCASE("unknown eval task") {
        tmp.file("in.csv", "doc_id,truth,score\na,1,0.5\n");
        auto r = run_cli("eval --input in.csv --task sorting", tmp);
        CHECK(r.exit_code == 2);
        CHECK(r.output.find("sorting") != std::string::npos);
    }
    SUBCASE("unknown scoring mode") {
        tmp.file("lex.csv", kTinyLexicon);
        tmp.file("corpus.txt", "superb day\n");
        auto r = run_cli("score --lexicon lex.csv --corpus corpus.txt --mode vibes",
                        tmp);
        CHECK(r.exit_code == 2);
    }
    SUBCASE("unknown config key") {
        tmp.file("cfg.json", "{\"sizes\": {\"possitive\": 5}}");
        auto r = run_cli("build --config cfg.json", tmp);
        CHECK(r.exit_code == 2);
        CHECK(r.output.find("possitive") != std::string::npos);
    }
    SUBCASE("malformed corpus is a data error with the line") {
        tmp.file("lex.csv", kTinyLexicon);
        tmp.file("corpus.csv", "doc_id,text\na,one doc\na,again\n");
        auto r = run_cli("score --lexicon lex.csv --corpus corpus.csv", tmp);
        CHECK(r.exit_code == 1);
        CHECK(r.output.find("line 3") != std::string::npos);
        CHECK(r.output.find("repeats") != std::string::npos);
    }
    SUBCASE("corrupt lexicon is a data error") {
        tmp.file("lex.csv", "word,valence,seed,sentiment\nx,2,0,Positive\n");
        tmp.file("corpus.txt", "a doc\n");
        auto r = run_cli("score --lexicon lex.csv --corpus corpus.txt", tmp);
        CHECK(r.exit_code == 1);
        CHECK(r.output.find("line 2") != std::string::npos);
    }
}

TEST_CASE("cli scoring by hand") {
    TempDir tmp;
    tmp.file("lex.csv", kTinyLexicon);
    tmp.file("corpus.csv",
             "doc_id,text\n"
             "a,Superb superb but blamed\n"
             "b,nothing matches here\n"
             "c,a fine day\n");

    SUBCASE("polarity") {
        auto r = run_cli("score --lexicon lex.csv --corpus corpus.csv "
                         "--mode polarity -o out", tmp);
        REQUIRE(r.exit_code == 0);
        auto rows = parse_file(tmp, tmp.path() / "out/scores.csv");
        REQUIRE(rows.size() == 4);
        CHECK(rows[0].fields ==
              std::vector<std::string>{"doc_id", "concept", "mode", "score",
                                       "matched_pos", "matched_neg",
                                       "matched_total", "no_match"});
        CHECK(rows[1].fields[0] == "a");
        CHECK(rows[1].fields[1] == "lex");
        CHECK(rows[1].fields[2] == "polarity");
        CHECK(std::fabs(to_double(rows[1].fields[3]) - 1.0 / 3.0) < 1e-15);
        CHECK(rows[1].fields[4] == "2");
        CHECK(rows[1].fields[5] == "1");
        CHECK(rows[1].fields[7] == "0");
        CHECK(rows[2].fields[3] == "0");
        CHECK(rows[2].fields[7] == "1");  // no-match flag
        CHECK(rows[3].fields[3] == "1");  // only "fine": (1-0)/1
    }
    SUBCASE("valence differs from polarity on graded words") {
        auto r = run_cli("score --lexicon lex.csv --corpus corpus.csv "
                         "--mode valence -o out", tmp);
        REQUIRE(r.exit_code == 0);
        auto rows = parse_file(tmp, tmp.path() / "out/scores.csv");
        CHECK(std::fabs(to_double(rows[1].fields[3]) - 1.0 / 3.0) < 1e-15);
        CHECK(to_double(rows[3].fields[3]) == 0.5);  // fine carries its weight
    }
    SUBCASE("top-words attribution file") {
        auto r = run_cli("score --lexicon lex.csv --corpus corpus.csv "
                         "--mode polarity --top-words 2 -o out", tmp);
        REQUIRE(r.exit_code == 0);
        auto rows = parse_file(tmp, tmp.path() / "out/attributions.csv");
        REQUIRE(rows.size() >= 3);
        CHECK(rows[0].fields ==
              std::vector<std::string>{"doc_id", "word", "valence",
                                       "occurrences", "contribution"});
        CHECK(rows[1].fields[0] == "a");
        CHECK(rows[1].fields[1] == "superb");
        CHECK(rows[1].fields[4] == "2");
        CHECK(rows[2].fields[1] == "blamed");
        CHECK(rows[2].fields[4] == "-1");
    }
}

TEST_CASE("cli frames pipeline") {
    TempDir tmp;
    std::string lexicons;
    for (const char* name : {"care", "fairness", "loyalty", "authority",
                             "sanctity"}) {
        lexicons += " --lexicon \"" +
                    (data_dir() / "frames" / (std::string(name) + "_lexicon.csv"))
                        .string() +
                    "\"";
    }
    auto corpus = (data_dir() / "frames_corpus.csv").string();
    auto r = run_cli("score --mode frames --corpus \"" + corpus + "\"" +
                     lexicons + " -o out", tmp);
    REQUIRE(r.exit_code == 0);

    auto rows = parse_file(tmp, tmp.path() / "out/predictions.csv");
    REQUIRE(rows.size() == 13);
    CHECK(rows[0].fields ==
          std::vector<std::string>{"doc_id", "predicted", "tie", "matches_Care",
                                   "matches_Fairness", "matches_Loyalty",
                                   "matches_Authority", "matches_Sanctity"});
    CHECK(rows[1].fields[1] == "Care");
    CHECK(rows[11].fields[1] == "Non-moral");
    CHECK(rows[12].fields[1] == "Care");  // 2-2 tie broken toward Care
    CHECK(rows[12].fields[2] == "1");

    auto truth = (data_dir() / "truth_frames.csv").string();
    auto e = run_cli("eval --task frames --scores out/predictions.csv --truth \"" +
                     truth + "\" -o out", tmp);
    REQUIRE(e.exit_code == 0);
    auto report = parse_file(tmp, tmp.path() / "out/report.csv");
    bool found_accuracy = false;
    for (const auto& row : report) {
        if (row.fields.size() == 4 && row.fields[1] == "accuracy") {
            found_accuracy = true;
            CHECK(std::fabs(to_double(row.fields[2]) - 11.0 / 12.0) < 1e-12);
        }
    }
    CHECK(found_accuracy);
}

TEST_CASE("cli regression eval and seed experiment") {
    TempDir tmp;
    auto config = (data_dir() / "demo_config.json").string();
    auto truth = (data_dir() / "truth_numeric.csv").string();
    REQUIRE(run_cli("build --config \"" + config + "\" -o out", tmp).exit_code == 0);
    REQUIRE(run_cli("score --config \"" + config +
                    "\" --lexicon out/sentiment_lexicon.csv -o out", tmp)
                .exit_code == 0);

    auto e = run_cli("eval --config \"" + config +
                     "\" --scores out/scores.csv --truth \"" + truth +
                     "\" -o out", tmp);
    REQUIRE(e.exit_code == 0);
    auto report = parse_file(tmp, tmp.path() / "out/report.csv");
    REQUIRE(report.size() == 7);  // header + 6 metrics
    CHECK(report[0].fields ==
          std::vector<std::string>{"lexicon", "metric", "value", "test"});
    CHECK(report[1].fields[0] == "sentiment");
    CHECK(report[1].fields[3] == "demo");
    std::vector<std::string> metrics;
    for (std::size_t i = 1; i < report.size(); ++i) {
        metrics.push_back(report[i].fields[1]);
    }
    CHECK(metrics == std::vector<std::string>{"slope", "intercept", "r_squared",
                                              "adj_r_squared", "rmse", "n_used"});

    auto x = run_cli("seed-experiment --config \"" + config + "\" --truth \"" +
                     truth + "\" --task regression -o out", tmp);
    REQUIRE(x.exit_code == 0);
    auto summary = parse_file(tmp, tmp.path() / "out/seed_experiment.csv");
    REQUIRE(summary.size() == 4);  // header + k in {2,3,4}
    CHECK(summary[0].fields ==
          std::vector<std::string>{"k", "runs", "succeeded", "mean", "sd"});
    CHECK(summary[3].fields[0] == "4");
    // k equal to the full pole leaves nothing to subsample, so no spread.
    CHECK(std::fabs(to_double(summary[3].fields[4])) < 1e-12);

    auto x2 = run_cli("seed-experiment --config \"" + config + "\" --truth \"" +
                      truth + "\" --task regression -o out_again", tmp);
    REQUIRE(x2.exit_code == 0);
    CHECK(tmp.read(tmp.path() / "out/seed_experiment.csv") ==
          tmp.read(tmp.path() / "out_again/seed_experiment.csv"));
    CHECK(tmp.read(tmp.path() / "out/seed_experiment_runs.csv") ==
          tmp.read(tmp.path() / "out_again/seed_experiment_runs.csv"));
}

TEST_CASE("cli compare and inspect") {
    TempDir tmp;
    auto golden = (data_dir() / "golden/sentiment_lexicon.csv").string();
    auto r = run_cli("compare \"" + golden + "\" \"" + golden + "\" -o out", tmp);
    REQUIRE(r.exit_code == 0);
    auto rows = parse_file(tmp, tmp.path() / "out/compare.csv");
    bool found = false;
    for (const auto& row : rows) {
        if (row.fields.size() == 4 && row.fields[2] == "overlap_fraction") {
            found = true;
            CHECK(row.fields[3] == "1");
        }
    }
    CHECK(found);

    auto i = run_cli("inspect \"" + golden + "\" -k 3", tmp);
    CHECK(i.exit_code == 0);
    CHECK(i.output.find("concept: sentiment") != std::string::npos);
    CHECK(i.output.find("amazing") != std::string::npos);
    CHECK(i.output.find("...") != std::string::npos);
}

TEST_CASE("cli environment overrides") {
    TempDir tmp;
    tmp.file("lex.csv", kTinyLexicon);
    tmp.file("corpus.txt", "superb stuff\n");
    auto r = run_cli("score --lexicon lex.csv --corpus corpus.txt", tmp,
                     "LEXKIT_OUTPUT_DIR=env_out ");
    REQUIRE(r.exit_code == 0);
    CHECK(fs::exists(tmp.path() / "env_out/scores.csv"));
    CHECK_FALSE(fs::exists(tmp.path() / "out/scores.csv"));

    // An explicit flag still wins over the environment.
    auto r2 = run_cli("score --lexicon lex.csv --corpus corpus.txt -o flag_out",
                      tmp, "LEXKIT_OUTPUT_DIR=env_out2 ");
    REQUIRE(r2.exit_code == 0);
    CHECK(fs::exists(tmp.path() / "flag_out/scores.csv"));
    CHECK_FALSE(fs::exists(tmp.path() / "env_out2"));
}
