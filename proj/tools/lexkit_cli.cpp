// lexkit: build seed-expanded lexicons from word embeddings, score corpora
// with them, and evaluate the results against labelled data.
//
// Subcommands: build, score, eval, compare, seed-experiment, inspect.
// Runs are driven by a JSON config file plus flag overrides; every output
// is a CSV (or JSON sidecar) written under the output directory.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "lexkit/csv.hpp"
#include "lexkit/digest.hpp"
#include "lexkit/embedding.hpp"
#include "lexkit/evaluator.hpp"
#include "lexkit/lexicon.hpp"
#include "lexkit/scorer.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using ojson = nlohmann::ordered_json;

namespace {

// Config and flag problems exit with 2, data problems at runtime with 1.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::string lower(std::string s) {
    for (char& c : s) {
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
    return s;
}

void require_exists(const std::string& path, const std::string& what) {
    if (path.empty()) throw UsageError("no " + what + " given");
    if (!fs::exists(path)) throw UsageError(what + " not found: " + path);
}

std::string read_text_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
    out.close();
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

double parse_double(const std::string& s, const std::string& what) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw std::runtime_error(what + " is not numeric: \"" + s + "\"");
    }
    return v;
}

std::size_t parse_size(const std::string& s, const std::string& what) {
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw UsageError(what + " is not a non-negative integer: \"" + s + "\"");
    }
    return v;
}

// ---------------------------------------------------------------------------
// Run configuration: defaults, then config file, then env, then flags.

struct RunConfig {
    std::string embeddings_path;
    std::string embeddings_format = "glove";
    lexkit::VocabFilterConfig filter;

    std::string seeds_path;  // CSV with word,pole header
    std::string positive_seeds_path;
    std::string negative_seeds_path;
    std::string positive_label = "Positive";
    std::string negative_label = "Negative";
    std::string concept_name;

    std::size_t positive_size = 1000;
    std::size_t negative_size = 1000;
    bool pole_means = false;

    std::vector<std::string> lexicon_paths;
    std::string corpus_path;
    std::string mode = "polarity";
    bool per_token_denominator = false;
    std::size_t top_words = 0;

    std::string task;
    std::string truth_path;
    std::string input_path;
    std::string scores_path;
    std::string lexicon_name;
    std::string test_name;

    std::vector<std::size_t> ks;
    std::size_t runs_per_k = 0;

    std::string output_dir = "out";
    std::uint64_t master_seed = 1234;
    std::size_t threads = 1;
};

void check_keys(const json& obj, const std::string& where,
                std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : obj.items()) {
        bool known = false;
        for (const char* name : allowed) {
            if (key == name) known = true;
        }
        if (!known) {
            throw UsageError("config: unknown key \"" + key + "\" in " + where);
        }
    }
}

std::string as_string(const json& v, const std::string& where) {
    if (!v.is_string()) throw UsageError("config: " + where + " must be a string");
    return v.get<std::string>();
}

bool as_bool(const json& v, const std::string& where) {
    if (!v.is_boolean()) throw UsageError("config: " + where + " must be a bool");
    return v.get<bool>();
}

std::size_t as_size(const json& v, const std::string& where) {
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
        throw UsageError("config: " + where +
                         " must be a non-negative integer");
    }
    return static_cast<std::size_t>(v.get<std::int64_t>());
}

std::uint64_t as_u64(const json& v, const std::string& where) {
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
        throw UsageError("config: " + where +
                         " must be a non-negative integer");
    }
    return v.get<std::uint64_t>();
}

// Paths in a config file are relative to the file itself, so a config plus
// its data can move around as one unit.
std::string resolve(const fs::path& base, const std::string& p) {
    fs::path path(p);
    if (path.is_absolute()) return path.lexically_normal().string();
    return (base / path).lexically_normal().string();
}

void apply_config_file(RunConfig& cfg, const std::string& config_path) {
    require_exists(config_path, "config file");
    json root;
    try {
        root = json::parse(read_text_file(config_path));
    } catch (const json::exception& e) {
        throw UsageError("config " + config_path + ": " + e.what());
    }
    if (!root.is_object()) throw UsageError("config must be a JSON object");
    const fs::path base = fs::path(config_path).parent_path();

    check_keys(root, "the top level",
               {"embeddings", "filter", "seeds", "sizes", "scoring",
                "evaluation", "experiment", "concept", "output_dir",
                "master_seed", "threads"});

    if (root.contains("embeddings")) {
        const json& o = root["embeddings"];
        check_keys(o, "embeddings", {"path", "format"});
        if (o.contains("path")) {
            cfg.embeddings_path = resolve(base, as_string(o["path"], "embeddings.path"));
        }
        if (o.contains("format")) {
            cfg.embeddings_format = as_string(o["format"], "embeddings.format");
        }
    }
    if (root.contains("filter")) {
        const json& o = root["filter"];
        check_keys(o, "filter",
                   {"drop_top_ranks", "min_word_length", "alpha_only",
                    "allowlist", "blocklist"});
        if (o.contains("drop_top_ranks")) {
            cfg.filter.drop_top_ranks = as_size(o["drop_top_ranks"], "filter.drop_top_ranks");
        }
        if (o.contains("min_word_length")) {
            cfg.filter.min_word_length = as_size(o["min_word_length"], "filter.min_word_length");
        }
        if (o.contains("alpha_only")) {
            cfg.filter.alpha_only = as_bool(o["alpha_only"], "filter.alpha_only");
        }
        if (o.contains("allowlist")) {
            cfg.filter.allowlist_path = resolve(base, as_string(o["allowlist"], "filter.allowlist"));
        }
        if (o.contains("blocklist")) {
            cfg.filter.blocklist_path = resolve(base, as_string(o["blocklist"], "filter.blocklist"));
        }
    }
    if (root.contains("seeds")) {
        const json& o = root["seeds"];
        check_keys(o, "seeds",
                   {"path", "positive_path", "negative_path", "positive_label",
                    "negative_label"});
        if (o.contains("path")) {
            cfg.seeds_path = resolve(base, as_string(o["path"], "seeds.path"));
        }
        if (o.contains("positive_path")) {
            cfg.positive_seeds_path = resolve(base, as_string(o["positive_path"], "seeds.positive_path"));
        }
        if (o.contains("negative_path")) {
            cfg.negative_seeds_path = resolve(base, as_string(o["negative_path"], "seeds.negative_path"));
        }
        if (o.contains("positive_label")) {
            cfg.positive_label = as_string(o["positive_label"], "seeds.positive_label");
        }
        if (o.contains("negative_label")) {
            cfg.negative_label = as_string(o["negative_label"], "seeds.negative_label");
        }
    }
    if (root.contains("sizes")) {
        const json& o = root["sizes"];
        check_keys(o, "sizes", {"positive", "negative", "pole_means"});
        if (o.contains("positive")) cfg.positive_size = as_size(o["positive"], "sizes.positive");
        if (o.contains("negative")) cfg.negative_size = as_size(o["negative"], "sizes.negative");
        if (o.contains("pole_means")) cfg.pole_means = as_bool(o["pole_means"], "sizes.pole_means");
    }
    if (root.contains("scoring")) {
        const json& o = root["scoring"];
        check_keys(o, "scoring",
                   {"mode", "corpus", "lexicon", "lexicons",
                    "per_token_denominator", "top_words"});
        if (o.contains("mode")) cfg.mode = as_string(o["mode"], "scoring.mode");
        if (o.contains("corpus")) {
            cfg.corpus_path = resolve(base, as_string(o["corpus"], "scoring.corpus"));
        }
        if (o.contains("lexicon")) {
            cfg.lexicon_paths.push_back(resolve(base, as_string(o["lexicon"], "scoring.lexicon")));
        }
        if (o.contains("lexicons")) {
            if (!o["lexicons"].is_array()) {
                throw UsageError("config: scoring.lexicons must be an array");
            }
            for (const json& item : o["lexicons"]) {
                cfg.lexicon_paths.push_back(resolve(base, as_string(item, "scoring.lexicons[]")));
            }
        }
        if (o.contains("per_token_denominator")) {
            cfg.per_token_denominator = as_bool(o["per_token_denominator"], "scoring.per_token_denominator");
        }
        if (o.contains("top_words")) {
            cfg.top_words = as_size(o["top_words"], "scoring.top_words");
        }
    }
    if (root.contains("evaluation")) {
        const json& o = root["evaluation"];
        check_keys(o, "evaluation",
                   {"task", "truth", "input", "scores", "lexicon_name",
                    "test_name"});
        if (o.contains("task")) cfg.task = as_string(o["task"], "evaluation.task");
        if (o.contains("truth")) {
            cfg.truth_path = resolve(base, as_string(o["truth"], "evaluation.truth"));
        }
        if (o.contains("input")) {
            cfg.input_path = resolve(base, as_string(o["input"], "evaluation.input"));
        }
        if (o.contains("scores")) {
            cfg.scores_path = resolve(base, as_string(o["scores"], "evaluation.scores"));
        }
        if (o.contains("lexicon_name")) {
            cfg.lexicon_name = as_string(o["lexicon_name"], "evaluation.lexicon_name");
        }
        if (o.contains("test_name")) {
            cfg.test_name = as_string(o["test_name"], "evaluation.test_name");
        }
    }
    if (root.contains("experiment")) {
        const json& o = root["experiment"];
        check_keys(o, "experiment", {"ks", "runs_per_k"});
        if (o.contains("ks")) {
            if (!o["ks"].is_array()) {
                throw UsageError("config: experiment.ks must be an array");
            }
            cfg.ks.clear();
            for (const json& item : o["ks"]) {
                cfg.ks.push_back(as_size(item, "experiment.ks[]"));
            }
        }
        if (o.contains("runs_per_k")) {
            cfg.runs_per_k = as_size(o["runs_per_k"], "experiment.runs_per_k");
        }
    }
    if (root.contains("concept")) cfg.concept_name = as_string(root["concept"], "concept");
    if (root.contains("output_dir")) {
        cfg.output_dir = as_string(root["output_dir"], "output_dir");
    }
    if (root.contains("master_seed")) {
        cfg.master_seed = as_u64(root["master_seed"], "master_seed");
    }
    if (root.contains("threads")) cfg.threads = as_size(root["threads"], "threads");
}

// The only environment overrides: where outputs land and how wide to fan out.
void apply_env(RunConfig& cfg) {
    if (const char* v = std::getenv("LEXKIT_OUTPUT_DIR")) cfg.output_dir = v;
    if (const char* v = std::getenv("LEXKIT_THREADS")) {
        cfg.threads = parse_size(v, "LEXKIT_THREADS");
    }
}

// ---------------------------------------------------------------------------
// Flag plumbing. One storage struct is shared by every subcommand (only one
// of them parses); the per-subcommand option pointers say what was given.

struct FlagValues {
    std::string config;
    std::string embeddings;
    std::string format;
    std::string seeds;
    std::string positive_seeds;
    std::string negative_seeds;
    std::string positive_label;
    std::string negative_label;
    std::string concept_name;
    std::size_t positive_size = 0;
    std::size_t negative_size = 0;
    bool pole_means = false;
    std::size_t drop_top_ranks = 0;
    std::size_t min_word_length = 0;
    bool alpha_only = true;
    std::string allowlist;
    std::string blocklist;
    std::vector<std::string> lexicons;
    std::string corpus;
    std::string mode;
    bool per_token = false;
    std::size_t top_words = 0;
    std::string input;
    std::string scores;
    std::string truth;
    std::string task;
    std::string lexicon_name;
    std::string test_name;
    std::string ks;
    std::size_t runs_per_k = 0;
    std::string output_dir;
    std::uint64_t master_seed = 0;
    std::size_t threads = 0;
    bool include_seeds = false;
    std::string inspect_path;
    std::string compare_a;
    std::string compare_b;
    std::size_t inspect_k = 10;
};

struct SubFlags {
    CLI::Option* config = nullptr;
    CLI::Option* embeddings = nullptr;
    CLI::Option* format = nullptr;
    CLI::Option* seeds = nullptr;
    CLI::Option* positive_seeds = nullptr;
    CLI::Option* negative_seeds = nullptr;
    CLI::Option* positive_label = nullptr;
    CLI::Option* negative_label = nullptr;
    CLI::Option* concept_name = nullptr;
    CLI::Option* positive_size = nullptr;
    CLI::Option* negative_size = nullptr;
    CLI::Option* pole_means = nullptr;
    CLI::Option* drop_top_ranks = nullptr;
    CLI::Option* min_word_length = nullptr;
    CLI::Option* alpha_only = nullptr;
    CLI::Option* allowlist = nullptr;
    CLI::Option* blocklist = nullptr;
    CLI::Option* lexicons = nullptr;
    CLI::Option* corpus = nullptr;
    CLI::Option* mode = nullptr;
    CLI::Option* per_token = nullptr;
    CLI::Option* top_words = nullptr;
    CLI::Option* input = nullptr;
    CLI::Option* scores = nullptr;
    CLI::Option* truth = nullptr;
    CLI::Option* task = nullptr;
    CLI::Option* lexicon_name = nullptr;
    CLI::Option* test_name = nullptr;
    CLI::Option* ks = nullptr;
    CLI::Option* runs_per_k = nullptr;
    CLI::Option* output_dir = nullptr;
    CLI::Option* master_seed = nullptr;
    CLI::Option* threads = nullptr;
    CLI::Option* include_seeds = nullptr;
};

bool given(const CLI::Option* opt) { return opt != nullptr && opt->count() > 0; }

void add_config_flag(CLI::App* sub, FlagValues& v, SubFlags& f) {
    f.config = sub->add_option("-c,--config", v.config, "JSON run config file");
    f.output_dir = sub->add_option("-o,--output-dir", v.output_dir,
                                   "directory for output files");
}

void add_build_inputs(CLI::App* sub, FlagValues& v, SubFlags& f) {
    f.embeddings = sub->add_option("--embeddings", v.embeddings,
                                   "embedding file (GloVe text or FastText .vec)");
    f.format = sub->add_option("--format", v.format,
                               "embedding format: glove or fasttext");
    f.seeds = sub->add_option("--seeds", v.seeds, "seed CSV with word,pole header");
    f.positive_seeds = sub->add_option("--positive-seeds", v.positive_seeds,
                                       "plain word list for the positive pole");
    f.negative_seeds = sub->add_option("--negative-seeds", v.negative_seeds,
                                       "plain word list for the negative pole");
    f.positive_label = sub->add_option("--positive-label", v.positive_label,
                                       "positive pole label");
    f.negative_label = sub->add_option("--negative-label", v.negative_label,
                                       "negative pole label");
    f.concept_name = sub->add_option("--concept", v.concept_name, "lexicon concept name");
    f.positive_size = sub->add_option("--positive-size", v.positive_size,
                                      "expanded words wanted on the positive side");
    f.negative_size = sub->add_option("--negative-size", v.negative_size,
                                      "expanded words wanted on the negative side");
    f.pole_means = sub->add_flag("--pole-means", v.pole_means,
                                 "score against pole mean vectors instead of sums");
    f.drop_top_ranks = sub->add_option("--drop-top-ranks", v.drop_top_ranks,
                                       "drop this many highest-frequency words");
    f.min_word_length = sub->add_option("--min-word-length", v.min_word_length,
                                        "shortest candidate word kept (bytes)");
    f.alpha_only = sub->add_flag("--alpha-only,!--no-alpha-only", v.alpha_only,
                                 "keep only alphabetic candidate words");
    f.allowlist = sub->add_option("--allowlist", v.allowlist,
                                  "only candidates on this word list");
    f.blocklist = sub->add_option("--blocklist", v.blocklist,
                                  "never these candidates");
}

void add_scoring_flags(CLI::App* sub, FlagValues& v, SubFlags& f) {
    f.lexicons = sub->add_option("--lexicon", v.lexicons,
                                 "lexicon CSV (repeat for frame prediction)");
    f.corpus = sub->add_option("--corpus", v.corpus,
                               "corpus CSV (doc_id,text) or one document per line");
    f.mode = sub->add_option("--mode", v.mode,
                             "scoring mode: polarity, valence, or frames");
    f.per_token = sub->add_flag("--per-token", v.per_token,
                                "divide polarity by document length, not matches");
    f.top_words = sub->add_option("--top-words", v.top_words,
                                  "also write the strongest matched words per document");
    f.threads = sub->add_option("--threads", v.threads,
                                "worker threads (0 = all cores)");
}

RunConfig make_config(const FlagValues& v, const SubFlags& f) {
    RunConfig cfg;
    if (given(f.config)) apply_config_file(cfg, v.config);
    apply_env(cfg);
    if (given(f.embeddings)) cfg.embeddings_path = v.embeddings;
    if (given(f.format)) cfg.embeddings_format = v.format;
    if (given(f.seeds)) cfg.seeds_path = v.seeds;
    if (given(f.positive_seeds)) cfg.positive_seeds_path = v.positive_seeds;
    if (given(f.negative_seeds)) cfg.negative_seeds_path = v.negative_seeds;
    if (given(f.positive_label)) cfg.positive_label = v.positive_label;
    if (given(f.negative_label)) cfg.negative_label = v.negative_label;
    if (given(f.concept_name)) cfg.concept_name = v.concept_name;
    if (given(f.positive_size)) cfg.positive_size = v.positive_size;
    if (given(f.negative_size)) cfg.negative_size = v.negative_size;
    if (given(f.pole_means)) cfg.pole_means = v.pole_means;
    if (given(f.drop_top_ranks)) cfg.filter.drop_top_ranks = v.drop_top_ranks;
    if (given(f.min_word_length)) cfg.filter.min_word_length = v.min_word_length;
    if (given(f.alpha_only)) cfg.filter.alpha_only = v.alpha_only;
    if (given(f.allowlist)) cfg.filter.allowlist_path = v.allowlist;
    if (given(f.blocklist)) cfg.filter.blocklist_path = v.blocklist;
    if (given(f.lexicons)) cfg.lexicon_paths = v.lexicons;
    if (given(f.corpus)) cfg.corpus_path = v.corpus;
    if (given(f.mode)) cfg.mode = v.mode;
    if (given(f.per_token)) cfg.per_token_denominator = v.per_token;
    if (given(f.top_words)) cfg.top_words = v.top_words;
    if (given(f.input)) cfg.input_path = v.input;
    if (given(f.scores)) cfg.scores_path = v.scores;
    if (given(f.truth)) cfg.truth_path = v.truth;
    if (given(f.task)) cfg.task = v.task;
    if (given(f.lexicon_name)) cfg.lexicon_name = v.lexicon_name;
    if (given(f.test_name)) cfg.test_name = v.test_name;
    if (given(f.ks)) {
        cfg.ks.clear();
        std::stringstream ss(v.ks);
        std::string part;
        while (std::getline(ss, part, ',')) {
            part = trim(part);
            if (!part.empty()) cfg.ks.push_back(parse_size(part, "--ks entry"));
        }
    }
    if (given(f.runs_per_k)) cfg.runs_per_k = v.runs_per_k;
    if (given(f.output_dir)) cfg.output_dir = v.output_dir;
    if (given(f.master_seed)) cfg.master_seed = v.master_seed;
    if (given(f.threads)) cfg.threads = v.threads;
    return cfg;
}

// ---------------------------------------------------------------------------
// Shared loaders.

lexkit::EmbeddingTable load_table(const RunConfig& cfg) {
    require_exists(cfg.embeddings_path, "embeddings file");
    lexkit::EmbeddingFormat format;
    try {
        format = lexkit::parse_embedding_format(cfg.embeddings_format);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    return lexkit::EmbeddingTable::load(cfg.embeddings_path, format);
}

lexkit::SeedSet load_seeds(const RunConfig& cfg) {
    lexkit::SeedSet seeds;
    seeds.positive_label = cfg.positive_label;
    seeds.negative_label = cfg.negative_label;
    std::string derived_concept;

    const bool csv_form = !cfg.seeds_path.empty();
    const bool list_form =
        !cfg.positive_seeds_path.empty() || !cfg.negative_seeds_path.empty();
    if (csv_form && list_form) {
        throw UsageError(
            "give either a seed CSV or the two pole word lists, not both");
    }
    if (csv_form) {
        require_exists(cfg.seeds_path, "seed file");
        auto rows = lexkit::csv::parse(read_text_file(cfg.seeds_path));
        if (rows.empty()) {
            throw std::runtime_error("seed file " + cfg.seeds_path + " is empty");
        }
        if (rows[0].fields != std::vector<std::string>{"word", "pole"}) {
            throw std::runtime_error("seed CSV line 1: header must be word,pole");
        }
        for (std::size_t i = 1; i < rows.size(); ++i) {
            const auto& row = rows[i];
            auto fail = [&](const std::string& msg) {
                throw std::runtime_error("seed CSV line " +
                                         std::to_string(row.line) + ": " + msg);
            };
            if (row.fields.size() != 2) fail("expected word,pole");
            std::string word = lower(trim(row.fields[0]));
            std::string pole = trim(row.fields[1]);
            if (word.empty()) fail("empty word");
            if (pole == seeds.positive_label) {
                seeds.positive_seeds.push_back(word);
            } else if (pole == seeds.negative_label) {
                seeds.negative_seeds.push_back(word);
            } else {
                fail("unknown pole \"" + pole + "\" (expected " +
                     seeds.positive_label + " or " + seeds.negative_label + ")");
            }
        }
        derived_concept = fs::path(cfg.seeds_path).stem().string();
    } else if (list_form) {
        if (cfg.positive_seeds_path.empty() || cfg.negative_seeds_path.empty()) {
            throw UsageError("both pole word lists are needed");
        }
        require_exists(cfg.positive_seeds_path, "positive seed list");
        require_exists(cfg.negative_seeds_path, "negative seed list");
        seeds.positive_seeds = lexkit::read_word_list(cfg.positive_seeds_path);
        seeds.negative_seeds = lexkit::read_word_list(cfg.negative_seeds_path);
        derived_concept = fs::path(cfg.positive_seeds_path).stem().string();
    } else {
        throw UsageError(
            "no seed words given (config seeds section, --seeds, or "
            "--positive-seeds/--negative-seeds)");
    }

    seeds.concept_name = cfg.concept_name.empty() ? derived_concept : cfg.concept_name;
    seeds.validate();
    return seeds;
}

std::vector<lexkit::TokenizedDoc> read_corpus(const std::string& path) {
    std::string text = read_text_file(path);
    std::vector<lexkit::TokenizedDoc> docs;
    std::unordered_set<std::string> seen;
    if (lower(fs::path(path).extension().string()) == ".csv") {
        auto rows = lexkit::csv::parse(text);
        if (rows.empty()) throw std::runtime_error("corpus " + path + " is empty");
        if (rows[0].fields != std::vector<std::string>{"doc_id", "text"}) {
            throw std::runtime_error("corpus CSV line 1: header must be doc_id,text");
        }
        for (std::size_t i = 1; i < rows.size(); ++i) {
            const auto& row = rows[i];
            std::string at = "corpus CSV line " + std::to_string(row.line);
            if (row.fields.size() != 2) {
                throw std::runtime_error(at + ": expected doc_id,text");
            }
            std::string id = trim(row.fields[0]);
            if (id.empty()) throw std::runtime_error(at + ": empty doc id");
            if (!seen.insert(id).second) {
                throw std::runtime_error(at + ": doc id \"" + id + "\" repeats");
            }
            docs.push_back(lexkit::tokenize(id, row.fields[1]));
        }
    } else {
        std::size_t line = 0, start = 0;
        while (start <= text.size() && !text.empty()) {
            std::size_t end = text.find('\n', start);
            std::string_view row(text);
            if (end == std::string::npos) {
                row = row.substr(start);
                start = text.size() + 1;
            } else {
                row = row.substr(start, end - start);
                start = end + 1;
            }
            if (start > text.size() && row.empty()) break;  // trailing newline
            ++line;
            if (!row.empty() && row.back() == '\r') row.remove_suffix(1);
            docs.push_back(lexkit::tokenize(std::to_string(line), row));
        }
    }
    return docs;
}

// Strips the "_lexicon" suffix a build leaves on the file name, and restores
// the standard capitalization of the five moral frames so predictions line
// up with hand-labelled truth files.
std::string concept_from_stem(const fs::path& path) {
    std::string stem = path.stem().string();
    const std::string suffix = "_lexicon";
    if (stem.size() > suffix.size() &&
        stem.compare(stem.size() - suffix.size(), suffix.size(), suffix) == 0) {
        stem.resize(stem.size() - suffix.size());
    }
    static const char* frames[] = {"Care", "Fairness", "Loyalty", "Authority",
                                   "Sanctity"};
    for (const char* frame : frames) {
        if (lower(stem) == lower(frame)) return frame;
    }
    return stem;
}

lexkit::Lexicon load_lexicon(const std::string& path) {
    require_exists(path, "lexicon file");
    return lexkit::import_lexicon_csv(path, concept_from_stem(path));
}

// ---------------------------------------------------------------------------
// Writers.

const std::vector<std::string> kScoresHeader = {
    "doc_id", "concept", "mode",          "score",
    "matched_pos", "matched_neg", "matched_total", "no_match"};

void write_scores_csv(const fs::path& path,
                      const std::vector<lexkit::DocumentScore>& scores) {
    std::string out = lexkit::csv::format_row(kScoresHeader);
    for (const auto& s : scores) {
        out += lexkit::csv::format_row(
            {s.doc_id, s.concept_name, std::string(lexkit::score_mode_name(s.mode)),
             lexkit::csv::format_double(s.score), std::to_string(s.matched_positive),
             std::to_string(s.matched_negative), std::to_string(s.matched_total),
             s.no_match ? "1" : "0"});
    }
    write_text_file(path, out);
}

void write_report_csv(const fs::path& path, const std::string& lexicon,
                      const std::string& test,
                      const std::vector<std::pair<std::string, std::string>>& metrics) {
    std::string out = lexkit::csv::format_row({"lexicon", "metric", "value", "test"});
    for (const auto& [metric, value] : metrics) {
        out += lexkit::csv::format_row({lexicon, metric, value, test});
    }
    write_text_file(path, out);
}

ojson filter_json(const RunConfig& cfg) {
    ojson filter;
    filter["drop_top_ranks"] = cfg.filter.drop_top_ranks;
    filter["min_word_length"] = cfg.filter.min_word_length;
    filter["alpha_only"] = cfg.filter.alpha_only;
    if (cfg.filter.allowlist_path) {
        filter["allowlist"] = cfg.filter.allowlist_path->filename().string();
    } else {
        filter["allowlist"] = nullptr;
    }
    if (cfg.filter.blocklist_path) {
        filter["blocklist"] = cfg.filter.blocklist_path->filename().string();
    } else {
        filter["blocklist"] = nullptr;
    }
    return filter;
}

void write_provenance(const fs::path& path, const lexkit::Lexicon& lex,
                      const RunConfig& cfg, std::size_t candidate_count) {
    std::size_t expanded_pos = 0, expanded_neg = 0, seed_pos = 0, seed_neg = 0;
    for (const auto& e : lex.entries) {
        if (e.seed) {
            (e.valence > 0 ? seed_pos : seed_neg) += 1;
        } else {
            (e.valence > 0 ? expanded_pos : expanded_neg) += 1;
        }
    }
    ojson prov;
    prov["concept"] = lex.concept_name;
    prov["positive_label"] = lex.positive_label;
    prov["negative_label"] = lex.negative_label;
    prov["embedding_source"] = lex.provenance.embedding_source;
    prov["filter_digest"] = lex.provenance.filter_digest;
    prov["seed_digest"] = lex.provenance.seed_digest;
    prov["candidates"] = candidate_count;
    prov["requested"] = ojson{{"positive", lex.provenance.positive_size},
                              {"negative", lex.provenance.negative_size}};
    prov["expanded"] = ojson{{"positive", expanded_pos}, {"negative", expanded_neg}};
    prov["seeds"] = ojson{{"positive", seed_pos}, {"negative", seed_neg}};
    prov["dropped_seeds"] = lex.provenance.dropped_seeds;
    prov["truncated"] = ojson{{"positive", lex.truncated_positive},
                              {"negative", lex.truncated_negative}};
    prov["filter"] = filter_json(cfg);
    prov["pole_means"] = cfg.pole_means;
    write_text_file(path, prov.dump(2) + "\n");
}

// ---------------------------------------------------------------------------
// Subcommands.

int run_build(const RunConfig& cfg) {
    if (cfg.filter.allowlist_path) {
        require_exists(cfg.filter.allowlist_path->string(), "allowlist");
    }
    if (cfg.filter.blocklist_path) {
        require_exists(cfg.filter.blocklist_path->string(), "blocklist");
    }
    auto seeds = load_seeds(cfg);
    auto table = load_table(cfg);
    auto candidates = lexkit::filter_vocabulary(table, cfg.filter);

    lexkit::Lexicon lex;
    try {
        lex = lexkit::build_lexicon(seeds, candidates, table, cfg.positive_size,
                                    cfg.negative_size, {cfg.pole_means});
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(std::string("build failed: ") + e.what());
    }

    for (const auto& dropped : lex.provenance.dropped_seeds) {
        std::cerr << "warning: seed \"" << dropped
                  << "\" is not in the embedding vocabulary\n";
    }
    if (lex.truncated_positive) {
        std::cerr << "warning: positive pole truncated, fewer than "
                  << cfg.positive_size << " candidates scored positive\n";
    }
    if (lex.truncated_negative) {
        std::cerr << "warning: negative pole truncated, fewer than "
                  << cfg.negative_size << " candidates scored negative\n";
    }

    fs::path out_dir(cfg.output_dir);
    fs::create_directories(out_dir);
    fs::path lex_path = out_dir / (lex.concept_name + "_lexicon.csv");
    fs::path prov_path = out_dir / (lex.concept_name + "_lexicon.provenance.json");
    lexkit::export_lexicon_csv(lex, lex_path);
    write_provenance(prov_path, lex, cfg, candidates.size());

    std::size_t seeds_kept = 0;
    for (const auto& e : lex.entries) seeds_kept += e.seed ? 1 : 0;
    std::cout << "built " << lex.concept_name << ": " << lex.entries.size()
              << " entries (" << (lex.entries.size() - seeds_kept)
              << " expanded, " << seeds_kept << " seeds) from "
              << candidates.size() << " candidates\n";
    std::cout << "wrote " << lex_path.string() << "\n";
    std::cout << "wrote " << prov_path.string() << "\n";
    return 0;
}

int run_score(const RunConfig& cfg) {
    require_exists(cfg.corpus_path, "corpus file");
    if (cfg.lexicon_paths.empty()) {
        throw UsageError("no lexicon given (config scoring.lexicon or --lexicon)");
    }
    for (const auto& p : cfg.lexicon_paths) require_exists(p, "lexicon file");

    auto docs = read_corpus(cfg.corpus_path);
    fs::path out_dir(cfg.output_dir);
    fs::create_directories(out_dir);

    if (cfg.mode == "frames") {
        std::vector<lexkit::Lexicon> frames;
        for (const auto& p : cfg.lexicon_paths) frames.push_back(load_lexicon(p));
        auto preds = lexkit::predict_frames(docs, frames, cfg.threads);

        std::vector<std::string> names;
        for (const auto& f : frames) names.push_back(f.concept_name);
        auto order = lexkit::canonical_frame_order(names);
        std::vector<std::string> header = {"doc_id", "predicted", "tie"};
        for (std::size_t idx : order) header.push_back("matches_" + names[idx]);

        std::string out = lexkit::csv::format_row(header);
        for (const auto& p : preds) {
            std::vector<std::string> row = {p.doc_id, p.predicted,
                                            p.tie ? "1" : "0"};
            for (const auto& [name, count] : p.frame_matches) {
                row.push_back(std::to_string(count));
            }
            out += lexkit::csv::format_row(row);
        }
        fs::path path = out_dir / "predictions.csv";
        write_text_file(path, out);
        std::cout << "predicted frames for " << preds.size() << " documents\n";
        std::cout << "wrote " << path.string() << "\n";
        return 0;
    }

    if (cfg.lexicon_paths.size() != 1) {
        throw UsageError("polarity/valence scoring takes exactly one lexicon");
    }
    lexkit::ScoreMode mode;
    try {
        mode = lexkit::parse_score_mode(cfg.mode);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    auto lex = load_lexicon(cfg.lexicon_paths[0]);
    lexkit::ScoreOptions options;
    options.per_token_denominator = cfg.per_token_denominator;
    auto scores = lexkit::score_corpus(docs, lex, mode, options, cfg.threads);

    fs::path scores_path = out_dir / "scores.csv";
    write_scores_csv(scores_path, scores);
    std::cout << "scored " << scores.size() << " documents with "
              << lex.concept_name << " (" << lexkit::score_mode_name(mode)
              << ")\n";
    std::cout << "wrote " << scores_path.string() << "\n";

    if (cfg.top_words > 0) {
        std::string out = lexkit::csv::format_row(
            {"doc_id", "word", "valence", "occurrences", "contribution"});
        for (const auto& doc : docs) {
            for (const auto& a :
                 lexkit::attribute_matches(doc, lex, mode, cfg.top_words)) {
                out += lexkit::csv::format_row(
                    {doc.doc_id, a.word, lexkit::csv::format_double(a.valence),
                     std::to_string(a.occurrences),
                     lexkit::csv::format_double(a.contribution)});
            }
        }
        fs::path attr_path = out_dir / "attributions.csv";
        write_text_file(attr_path, out);
        std::cout << "wrote " << attr_path.string() << "\n";
    }
    return 0;
}

struct EvalRows {
    std::vector<std::string> ids;
    std::vector<std::string> truth;
    std::vector<std::string> value;
    std::string lexicon_hint;
};

EvalRows load_eval_rows(const RunConfig& cfg) {
    const bool single = !cfg.input_path.empty();
    const bool joined = !cfg.scores_path.empty() || !cfg.truth_path.empty();
    if (single == joined) {
        throw UsageError(
            "give either --input (doc_id,truth,score) or --scores plus --truth");
    }
    EvalRows rows;
    if (single) {
        require_exists(cfg.input_path, "eval input");
        auto parsed = lexkit::csv::parse(read_text_file(cfg.input_path));
        if (parsed.empty()) {
            throw std::runtime_error("eval input " + cfg.input_path + " is empty");
        }
        if (parsed[0].fields.size() != 3 || parsed[0].fields[0] != "doc_id" ||
            parsed[0].fields[1] != "truth") {
            throw std::runtime_error(
                "eval input line 1: header must be doc_id,truth,<score or "
                "prediction>");
        }
        for (std::size_t i = 1; i < parsed.size(); ++i) {
            const auto& row = parsed[i];
            if (row.fields.size() != 3) {
                throw std::runtime_error("eval input line " +
                                         std::to_string(row.line) +
                                         ": expected 3 fields");
            }
            rows.ids.push_back(trim(row.fields[0]));
            rows.truth.push_back(trim(row.fields[1]));
            rows.value.push_back(trim(row.fields[2]));
        }
        rows.lexicon_hint = fs::path(cfg.input_path).stem().string();
        return rows;
    }

    if (cfg.scores_path.empty() || cfg.truth_path.empty()) {
        throw UsageError("--scores and --truth go together");
    }
    require_exists(cfg.scores_path, "scores file");
    require_exists(cfg.truth_path, "truth file");

    auto truth_rows = lexkit::csv::parse(read_text_file(cfg.truth_path));
    if (truth_rows.empty() ||
        truth_rows[0].fields != std::vector<std::string>{"doc_id", "truth"}) {
        throw std::runtime_error("truth file line 1: header must be doc_id,truth");
    }
    std::unordered_map<std::string, std::string> truth_by_id;
    for (std::size_t i = 1; i < truth_rows.size(); ++i) {
        const auto& row = truth_rows[i];
        if (row.fields.size() != 2) {
            throw std::runtime_error("truth file line " +
                                     std::to_string(row.line) +
                                     ": expected doc_id,truth");
        }
        std::string id = trim(row.fields[0]);
        if (!truth_by_id.emplace(id, trim(row.fields[1])).second) {
            throw std::runtime_error("truth file line " +
                                     std::to_string(row.line) + ": doc id \"" +
                                     id + "\" repeats");
        }
    }

    auto score_rows = lexkit::csv::parse(read_text_file(cfg.scores_path));
    if (score_rows.empty()) {
        throw std::runtime_error("scores file " + cfg.scores_path + " is empty");
    }
    const auto& header = score_rows[0].fields;
    std::size_t value_col = 0;
    std::size_t concept_col = std::string::npos;
    if (header == kScoresHeader) {
        value_col = 3;
        concept_col = 1;
    } else if (header.size() >= 2 && header[0] == "doc_id" &&
               header[1] == "predicted") {
        value_col = 1;
    } else {
        throw std::runtime_error(
            "scores file line 1: expected a scores.csv or predictions.csv "
            "header");
    }
    for (std::size_t i = 1; i < score_rows.size(); ++i) {
        const auto& row = score_rows[i];
        if (row.fields.size() != header.size()) {
            throw std::runtime_error("scores file line " +
                                     std::to_string(row.line) +
                                     ": wrong field count");
        }
        std::string id = trim(row.fields[0]);
        auto it = truth_by_id.find(id);
        if (it == truth_by_id.end()) {
            throw std::runtime_error("truth file has no row for doc id \"" +
                                     id + "\"");
        }
        rows.ids.push_back(id);
        rows.truth.push_back(it->second);
        rows.value.push_back(trim(row.fields[value_col]));
        if (concept_col != std::string::npos && rows.lexicon_hint.empty()) {
            rows.lexicon_hint = row.fields[concept_col];
        }
    }
    if (rows.lexicon_hint.empty()) {
        rows.lexicon_hint = fs::path(cfg.scores_path).stem().string();
    }
    return rows;
}

std::string predicted_class(const lexkit::LogisticFit& fit, double x) {
    std::size_t arg = 0;
    double best = 0.0;  // reference class logit is pinned at zero
    for (std::size_t c = 1; c < fit.classes.size(); ++c) {
        double logit = fit.params[2 * (c - 1)] + fit.params[2 * (c - 1) + 1] * x;
        if (logit > best) {
            best = logit;
            arg = c;
        }
    }
    return fit.classes[arg];
}

int run_eval(const RunConfig& cfg) {
    if (cfg.task.empty()) {
        throw UsageError("no eval task given (regression, classification, or frames)");
    }
    if (cfg.task != "regression" && cfg.task != "classification" &&
        cfg.task != "frames") {
        throw UsageError("unknown eval task \"" + cfg.task +
                         "\" (expected regression, classification, or frames)");
    }
    auto rows = load_eval_rows(cfg);
    const std::string lexicon_name =
        cfg.lexicon_name.empty() ? rows.lexicon_hint : cfg.lexicon_name;
    const std::string test_name = cfg.test_name.empty() ? cfg.task : cfg.test_name;

    std::vector<std::pair<std::string, std::string>> metrics;
    auto add = [&](const std::string& name, double value) {
        metrics.emplace_back(name, lexkit::csv::format_double(value));
    };

    try {
        if (cfg.task == "regression") {
            std::vector<double> x, y;
            for (std::size_t i = 0; i < rows.ids.size(); ++i) {
                x.push_back(parse_double(rows.value[i],
                                         "score for doc \"" + rows.ids[i] + "\""));
                y.push_back(parse_double(rows.truth[i],
                                         "truth for doc \"" + rows.ids[i] + "\""));
            }
            auto fit = lexkit::ols_fit(x, y);
            add("slope", fit.slope);
            add("intercept", fit.intercept);
            add("r_squared", fit.r_squared);
            add("adj_r_squared", fit.adj_r_squared);
            add("rmse", fit.rmse);
            metrics.emplace_back("n_used", std::to_string(fit.n_used));
        } else if (cfg.task == "classification") {
            std::vector<double> x;
            for (std::size_t i = 0; i < rows.ids.size(); ++i) {
                x.push_back(parse_double(rows.value[i],
                                         "score for doc \"" + rows.ids[i] + "\""));
            }
            auto fit = lexkit::logistic_fit_accuracy(x, rows.truth);
            std::vector<std::string> predicted;
            for (double v : x) predicted.push_back(predicted_class(fit, v));
            auto report =
                lexkit::classification_metrics(lexkit::confusion(rows.truth, predicted));
            add("accuracy", fit.accuracy);
            add("macro_f1", report.macro_f1);
            for (const auto& c : report.per_class) add("f1_" + c.label, c.f1);
            metrics.emplace_back("converged", fit.converged ? "1" : "0");
            metrics.emplace_back("n_used", std::to_string(x.size()));
        } else {
            auto report =
                lexkit::classification_metrics(lexkit::confusion(rows.truth, rows.value));
            add("accuracy", report.accuracy);
            add("macro_f1", report.macro_f1);
            for (const auto& c : report.per_class) add("f1_" + c.label, c.f1);
            metrics.emplace_back("n_used", std::to_string(rows.ids.size()));
        }
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(std::string("eval failed: ") + e.what());
    }

    fs::path out_dir(cfg.output_dir);
    fs::create_directories(out_dir);
    fs::path path = out_dir / "report.csv";
    write_report_csv(path, lexicon_name, test_name, metrics);
    for (const auto& [name, value] : metrics) {
        std::cout << name << " = " << value << "\n";
    }
    std::cout << "wrote " << path.string() << "\n";
    return 0;
}

int run_compare(const RunConfig& cfg, const std::string& a_path,
                const std::string& b_path, bool include_seeds) {
    auto a = load_lexicon(a_path);
    auto b = load_lexicon(b_path);
    auto report = lexkit::compare_lexicons(a, b, include_seeds);

    const std::string a_name = fs::path(a_path).stem().string();
    const std::string b_name = fs::path(b_path).stem().string();
    std::string out = lexkit::csv::format_row({"a", "b", "metric", "value"});
    auto add = [&](const std::string& metric, const std::string& value) {
        out += lexkit::csv::format_row({a_name, b_name, metric, value});
    };
    add("a_words", std::to_string(report.a_words));
    add("b_words", std::to_string(report.b_words));
    add("shared", std::to_string(report.shared));
    add("overlap_fraction", lexkit::csv::format_double(report.overlap_fraction));
    add("direction_agreement",
        lexkit::csv::format_double(report.direction_agreement));
    if (report.has_regression) {
        add("slope", lexkit::csv::format_double(report.slope));
        add("intercept", lexkit::csv::format_double(report.intercept));
    }

    fs::path out_dir(cfg.output_dir);
    fs::create_directories(out_dir);
    fs::path path = out_dir / "compare.csv";
    write_text_file(path, out);

    std::string outliers = lexkit::csv::format_row(
        {"word", "a_valence", "b_valence", "residual", "over_06"});
    std::unordered_set<std::string> strict;
    for (const auto& o : report.outliers_over_06) strict.insert(o.word);
    for (const auto& o : report.outliers_over_05) {
        outliers += lexkit::csv::format_row(
            {o.word, lexkit::csv::format_double(o.a_valence),
             lexkit::csv::format_double(o.b_valence),
             lexkit::csv::format_double(o.residual),
             strict.count(o.word) ? "1" : "0"});
    }
    fs::path outlier_path = out_dir / "compare_outliers.csv";
    write_text_file(outlier_path, outliers);

    std::cout << "overlap " << lexkit::csv::format_double(report.overlap_fraction)
              << " (" << report.shared << "/" << report.a_words
              << " shared words), direction agreement "
              << lexkit::csv::format_double(report.direction_agreement) << "\n";
    std::cout << "wrote " << path.string() << "\n";
    std::cout << "wrote " << outlier_path.string() << "\n";
    return 0;
}

int run_seed_experiment(const RunConfig& cfg) {
    if (cfg.ks.empty()) {
        throw UsageError("no subsample sizes given (experiment.ks or --ks)");
    }
    if (cfg.runs_per_k < 2) {
        throw UsageError("runs_per_k must be at least 2");
    }
    if (cfg.task != "regression" && cfg.task != "classification") {
        throw UsageError(
            "seed-experiment needs an eval task of regression or classification");
    }
    require_exists(cfg.corpus_path, "corpus file");
    require_exists(cfg.truth_path, "truth file");

    auto seeds = load_seeds(cfg);
    auto table = load_table(cfg);
    auto candidates = lexkit::filter_vocabulary(table, cfg.filter);
    auto docs = read_corpus(cfg.corpus_path);

    auto truth_rows = lexkit::csv::parse(read_text_file(cfg.truth_path));
    if (truth_rows.empty() ||
        truth_rows[0].fields != std::vector<std::string>{"doc_id", "truth"}) {
        throw std::runtime_error("truth file line 1: header must be doc_id,truth");
    }
    std::unordered_map<std::string, std::string> truth_by_id;
    for (std::size_t i = 1; i < truth_rows.size(); ++i) {
        truth_by_id[trim(truth_rows[i].fields.at(0))] =
            trim(truth_rows[i].fields.size() > 1 ? truth_rows[i].fields[1] : "");
    }
    std::vector<std::string> truth;
    for (const auto& doc : docs) {
        auto it = truth_by_id.find(doc.doc_id);
        if (it == truth_by_id.end()) {
            throw std::runtime_error("truth file has no row for doc id \"" +
                                     doc.doc_id + "\"");
        }
        truth.push_back(it->second);
    }
    std::vector<double> truth_numeric;
    if (cfg.task == "regression") {
        for (std::size_t i = 0; i < truth.size(); ++i) {
            truth_numeric.push_back(
                parse_double(truth[i], "truth for doc \"" + docs[i].doc_id + "\""));
        }
    }
    lexkit::ScoreMode mode;
    try {
        mode = lexkit::parse_score_mode(cfg.mode);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }

    lexkit::ScoreOptions score_options;
    score_options.per_token_denominator = cfg.per_token_denominator;
    auto build_fn = [&](const lexkit::SeedSet& sampled) {
        return lexkit::build_lexicon(sampled, candidates, table,
                                     cfg.positive_size, cfg.negative_size,
                                     {cfg.pole_means});
    };
    auto eval_fn = [&](const lexkit::Lexicon& lex) {
        auto scores = lexkit::score_corpus(docs, lex, mode, score_options,
                                           cfg.threads);
        std::vector<double> x;
        for (const auto& s : scores) x.push_back(s.score);
        if (cfg.task == "regression") {
            return lexkit::ols_fit(x, truth_numeric).r_squared;
        }
        return lexkit::logistic_fit_accuracy(x, truth).accuracy;
    };

    auto report = lexkit::seed_sensitivity(seeds, cfg.ks, cfg.runs_per_k,
                                           build_fn, eval_fn, cfg.master_seed);

    fs::path out_dir(cfg.output_dir);
    fs::create_directories(out_dir);
    std::string summary =
        lexkit::csv::format_row({"k", "runs", "succeeded", "mean", "sd"});
    std::string detail = lexkit::csv::format_row(
        {"k", "run", "rng_seed", "ok", "value", "error"});
    for (const auto& entry : report.per_k) {
        summary += lexkit::csv::format_row(
            {std::to_string(entry.k), std::to_string(entry.runs.size()),
             std::to_string(entry.succeeded),
             lexkit::csv::format_double(entry.mean),
             lexkit::csv::format_double(entry.sd)});
        for (std::size_t r = 0; r < entry.runs.size(); ++r) {
            const auto& run = entry.runs[r];
            detail += lexkit::csv::format_row(
                {std::to_string(entry.k), std::to_string(r),
                 std::to_string(run.rng_seed), run.ok ? "1" : "0",
                 run.ok ? lexkit::csv::format_double(run.value) : "",
                 run.error});
        }
        std::cout << "k=" << entry.k << ": mean "
                  << lexkit::csv::format_double(entry.mean) << " sd "
                  << lexkit::csv::format_double(entry.sd) << " ("
                  << entry.succeeded << "/" << entry.runs.size() << " runs)\n";
    }
    fs::path summary_path = out_dir / "seed_experiment.csv";
    fs::path detail_path = out_dir / "seed_experiment_runs.csv";
    write_text_file(summary_path, summary);
    write_text_file(detail_path, detail);
    std::cout << "wrote " << summary_path.string() << "\n";
    std::cout << "wrote " << detail_path.string() << "\n";
    return 0;
}

int run_inspect(const std::string& path, std::size_t k) {
    auto lex = load_lexicon(path);
    std::size_t seeds = 0;
    for (const auto& e : lex.entries) seeds += e.seed ? 1 : 0;
    std::cout << "concept: " << lex.concept_name << " (" << lex.positive_label
              << " / " << lex.negative_label << ")\n";
    std::cout << "entries: " << lex.entries.size() << " (" << seeds
              << " seeds)\n\n";

    std::vector<std::size_t> shown;
    bool split = lex.entries.size() > 2 * k;
    if (split) {
        for (std::size_t i = 0; i < k; ++i) shown.push_back(i);
        for (std::size_t i = lex.entries.size() - k; i < lex.entries.size(); ++i) {
            shown.push_back(i);
        }
    } else {
        for (std::size_t i = 0; i < lex.entries.size(); ++i) shown.push_back(i);
    }

    std::size_t word_width = 4;
    for (std::size_t i : shown) {
        word_width = std::max(word_width, lex.entries[i].word.size());
    }
    std::cout << std::left << std::setw(static_cast<int>(word_width) + 2)
              << "word" << std::setw(12) << "valence" << std::setw(6) << "seed"
              << "sentiment\n";
    for (std::size_t n = 0; n < shown.size(); ++n) {
        if (split && n == k) std::cout << "...\n";
        const auto& e = lex.entries[shown[n]];
        std::cout << std::left << std::setw(static_cast<int>(word_width) + 2)
                  << e.word << std::setw(12)
                  << lexkit::csv::format_double(e.valence) << std::setw(6)
                  << (e.seed ? "1" : "0") << e.pole << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Seed-expanded lexicon toolkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "lexkit 0.1.0");

    FlagValues v;
    SubFlags build_f, score_f, eval_f, compare_f, experiment_f;

    CLI::App* build = app.add_subcommand(
        "build", "expand seed words into a lexicon over an embedding vocabulary");
    add_config_flag(build, v, build_f);
    add_build_inputs(build, v, build_f);

    CLI::App* score = app.add_subcommand(
        "score", "score a corpus with a lexicon, or predict moral frames");
    add_config_flag(score, v, score_f);
    add_scoring_flags(score, v, score_f);

    CLI::App* eval = app.add_subcommand(
        "eval", "evaluate scores or predictions against labelled truth");
    add_config_flag(eval, v, eval_f);
    eval_f.input = eval->add_option("--input", v.input,
                                    "CSV with doc_id,truth,<score or prediction>");
    eval_f.scores = eval->add_option("--scores", v.scores,
                                     "scores.csv or predictions.csv to evaluate");
    eval_f.truth = eval->add_option("--truth", v.truth,
                                    "CSV with doc_id,truth to join on");
    eval_f.task = eval->add_option(
        "--task", v.task, "regression, classification, or frames");
    eval_f.lexicon_name = eval->add_option("--lexicon-name", v.lexicon_name,
                                           "lexicon column value in the report");
    eval_f.test_name = eval->add_option("--test-name", v.test_name,
                                        "test column value in the report");

    CLI::App* compare = app.add_subcommand(
        "compare", "overlap and valence agreement between two lexicons");
    add_config_flag(compare, v, compare_f);
    compare->add_option("a", v.compare_a, "first lexicon CSV")->required();
    compare->add_option("b", v.compare_b, "second lexicon CSV")->required();
    compare_f.include_seeds = compare->add_flag(
        "--include-seeds", v.include_seeds, "count seed rows too");

    CLI::App* experiment = app.add_subcommand(
        "seed-experiment",
        "rebuild with subsampled seeds and track evaluation spread");
    add_config_flag(experiment, v, experiment_f);
    add_build_inputs(experiment, v, experiment_f);
    add_scoring_flags(experiment, v, experiment_f);
    experiment_f.truth = experiment->add_option(
        "--truth", v.truth, "CSV with doc_id,truth to evaluate against");
    experiment_f.task = experiment->add_option(
        "--task", v.task, "regression or classification");
    experiment_f.ks = experiment->add_option(
        "--ks", v.ks, "comma-separated seed counts per pole, e.g. 5,10,25");
    experiment_f.runs_per_k = experiment->add_option(
        "--runs-per-k", v.runs_per_k, "independent subsamples per k");
    experiment_f.master_seed = experiment->add_option(
        "--master-seed", v.master_seed, "rng seed the run seeds derive from");

    CLI::App* inspect = app.add_subcommand(
        "inspect", "print the strongest words of a lexicon");
    inspect->add_option("lexicon", v.inspect_path, "lexicon CSV")->required();
    inspect->add_option("-k,--top", v.inspect_k,
                        "rows to show from each end");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (build->parsed()) return run_build(make_config(v, build_f));
        if (score->parsed()) return run_score(make_config(v, score_f));
        if (eval->parsed()) return run_eval(make_config(v, eval_f));
        if (compare->parsed()) {
            return run_compare(make_config(v, compare_f), v.compare_a,
                               v.compare_b, v.include_seeds);
        }
        if (experiment->parsed()) {
            return run_seed_experiment(make_config(v, experiment_f));
        }
        if (inspect->parsed()) return run_inspect(v.inspect_path, v.inspect_k);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
