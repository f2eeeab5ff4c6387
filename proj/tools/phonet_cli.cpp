// Command-line front end: corpus synthesis, pattern extraction, training,
// recognition, and theorem verification.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "phonet/corpus.hpp"
#include "phonet/partition.hpp"
#include "phonet/verify.hpp"

namespace fs = std::filesystem;
using namespace phonet;

namespace {

// exit codes per failure mode
constexpr int kExitManifestParse = 2;
constexpr int kExitIo = 3;
constexpr int kExitExtraction = 4;
constexpr int kExitModelMismatch = 5;
constexpr int kExitPrecondition = 6;

bool log_enabled() {
    const char* lvl = std::getenv("RP_LOG");
    return lvl && std::string(lvl) != "quiet";
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// write to a temp file and rename, so failures never leave partial output
void write_file_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + tmp);
        out << content;
        if (!out) throw std::runtime_error("write failed: " + tmp);
    }
    fs::rename(tmp, path);
}

PatternVector seeded_unit_pattern(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(0.2, 1.0);
    Vec15 v;
    for (double& x : v) x = dist(rng);
    return normalize_unit(v);
}

int run_synth(const std::string& manifest_path, const std::string& out_dir,
              int rate) {
    std::vector<ManifestEntry> entries;
    try {
        entries = parse_manifest(read_file(manifest_path));
    } catch (const std::exception& e) {
        std::cerr << "synth: " << e.what() << "\n";
        return kExitManifestParse;
    }
    try {
        fs::create_directories(out_dir);
        for (const auto& e : entries) {
            const Signal sig = synth_vowel(e.spec, rate, e.seed);
            const std::string path = out_dir + "/" + wav_name(e);
            write_wav(path, sig);
            std::cout << wav_name(e) << " " << sig.samples.size()
                      << " samples @ " << rate << " Hz\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "synth: " << e.what() << "\n";
        return kExitIo;
    }
    return 0;
}

int run_extract(const std::string& manifest_path, const std::string& audio_dir,
                const std::string& window_name_, std::size_t stride,
                double gamma, const std::string& out_path,
                const std::string& dump_spectra) {
    std::vector<ManifestEntry> entries;
    try {
        entries = parse_manifest(read_file(manifest_path));
    } catch (const std::exception& e) {
        std::cerr << "extract: " << e.what() << "\n";
        return kExitManifestParse;
    }
    const WindowKind window = parse_window(window_name_);
    std::vector<LabeledPattern> patterns;
    nlohmann::json spectra_dump = nlohmann::json::array();
    for (const auto& e : entries) {
        const std::string wav = audio_dir + "/" + wav_name(e);
        try {
            const Signal sig = read_wav(wav);
            LabeledPattern p;
            p.label = e.label;
            p.pattern = extract_pattern(sig, {0, sig.samples.size()}, window,
                                        stride);
            p.below_gamma = !gamma_floor(p.pattern, gamma);
            if (p.below_gamma && log_enabled())
                std::cerr << "warning: segment " << wav_name(e)
                          << " falls below gamma = " << gamma << "\n";
            patterns.push_back(std::move(p));
            if (!dump_spectra.empty()) {
                const auto blocks = block_stream(sig, stride);
                std::vector<PowerSpectrum> frames;
                for (const auto& b : blocks)
                    frames.push_back(power_spectrum(b, window, sig.rate));
                const auto avg = average_spectra(frames);
                spectra_dump.push_back({{"segment", wav_name(e)},
                                        {"bin_width", avg.bin_width},
                                        {"bins", avg.bins}});
            }
        } catch (const std::exception& ex) {
            std::cerr << "extract: segment " << wav_name(e) << ": "
                      << ex.what() << "\n";
            return kExitExtraction;
        }
    }
    write_file_atomic(out_path, patterns_to_jsonl(patterns));
    if (!dump_spectra.empty())
        write_file_atomic(dump_spectra, spectra_dump.dump(2));
    return 0;
}

int run_train(const std::string& patterns_path, const NetworkConfig& config,
              std::size_t epochs, std::uint64_t seed, double jitter,
              const std::string& model_path,
              const std::string& partition_path) {
    std::vector<LabeledPattern> patterns;
    try {
        patterns = parse_patterns(read_file(patterns_path));
    } catch (const std::exception& e) {
        std::cerr << "train: " << e.what() << "\n";
        return kExitManifestParse;
    }

    std::vector<std::pair<PatternVector, std::string>> usable;
    for (const auto& p : patterns) {
        if (p.below_gamma || !gamma_floor(p.pattern, config.gamma)) {
            if (log_enabled())
                std::cerr << "warning: rejecting pattern '" << p.label
                          << "' below gamma\n";
            continue;
        }
        usable.emplace_back(p.pattern, p.label);
    }
    if (usable.empty()) {
        std::cerr << "train: no patterns pass the gamma floor\n";
        return kExitExtraction;
    }

    Network net = init_network(config, seed, jitter);
    std::vector<std::pair<PatternVector, std::string>> stream;
    stream.reserve(usable.size() * epochs);
    for (std::size_t e = 0; e < epochs; ++e)
        for (const auto& p : usable) stream.push_back(p);
    net = train(std::move(net), stream);
    write_file_atomic(model_path, network_to_json(net));

    if (!partition_path.empty()) {
        const auto part = build_partition(usable);
        write_file_atomic(partition_path, partition_to_json(part));
        std::cout << "partition: " << part.atoms.size()
                  << " atoms, delta = " << part.delta << "\n";
    }
    std::size_t labeled = 0;
    for (const auto& l : net.labels) labeled += l.has_value();
    std::cout << "trained " << net.neurons.size() << " neurons, " << labeled
              << " labeled, " << stream.size() << " presentations\n";
    return 0;
}

nlohmann::json result_to_json(const RecognitionResult& r) {
    if (const auto* rec = std::get_if<Recognized>(&r))
        return {{"outcome", "recognized"},
                {"label", rec->label},
                {"rho", rec->rho},
                {"atom", rec->atom_index}};
    const auto& un = std::get<Unrecognized>(r);
    return {{"outcome", "unrecognized"},
            {"rho", un.rho},
            {"nearest_atom", un.nearest_atom}};
}

int run_recognize(const std::string& model_path,
                  const std::string& partition_path,
                  const std::string& patterns_path,
                  const std::string& out_path) {
    Network net;
    VoronoiPartition part;
    std::vector<LabeledPattern> patterns;
    try {
        net = network_from_json(read_file(model_path));
        part = partition_from_json(read_file(partition_path));
        patterns = parse_patterns(read_file(patterns_path));
    } catch (const std::exception& e) {
        std::cerr << "recognize: " << e.what() << "\n";
        return kExitManifestParse;
    }

    std::ostringstream out;
    std::map<std::string, std::map<std::string, int>> confusion;
    try {
        for (const auto& p : patterns) {
            const auto by_partition = recognize(part, p.pattern);
            const auto by_network =
                recognize_via_network(net, part, p.pattern);
            nlohmann::json line = {{"label", p.label},
                                   {"partition", result_to_json(by_partition)},
                                   {"network", result_to_json(by_network)}};
            out << line.dump() << '\n';
            const auto* rec = std::get_if<Recognized>(&by_partition);
            confusion[p.label][rec ? rec->label : "(unrecognized)"] += 1;
        }
    } catch (const UnassignableNeuron& e) {
        std::cerr << "recognize: model/partition mismatch: " << e.what()
                  << "\n";
        return kExitModelMismatch;
    }
    nlohmann::json summary = {{"confusion", confusion}};
    out << summary.dump() << '\n';
    write_file_atomic(out_path, out.str());
    return 0;
}

int run_verify(int theorem, const std::string& window_flag, double alpha,
               double beta, double gamma, double delta, double dt,
               std::size_t steps, std::uint64_t seed,
               const std::string& pert_kind, std::size_t horizon,
               bool allow_violation, const std::string& partition_path,
               const std::string& manifest_path, const std::string& audio_dir,
               const std::string& out_path) {
    NetworkConfig cfg;
    cfg.alpha = alpha;
    cfg.beta = beta;
    cfg.gamma = gamma;
    cfg.dt = dt;

    std::string report;
    if (theorem == 1) {
        const auto rep =
            check_theorem1(seeded_unit_pattern(seed), cfg, steps);
        report = convergence_report_to_json(rep);
    } else if (theorem == 3) {
        VoronoiPartition part;
        try {
            part = partition_from_json(read_file(partition_path));
        } catch (const std::exception& e) {
            std::cerr << "verify: " << e.what() << "\n";
            return kExitManifestParse;
        }
        report = gamma_criterion_report_to_json(
            check_gamma_criterion(part, gamma));
    } else if (theorem == 5) {
        const PatternVector x_hat = seeded_unit_pattern(seed);
        double min_comp = 1.0;
        for (double c : x_hat.c) min_comp = std::min(min_comp, c);
        PerturbationSpec pert;
        pert.kind = pert_kind == "noise"
                        ? PerturbationSpec::Kind::SmoothedNoise
                        : PerturbationSpec::Kind::Sinusoidal;
        pert.amplitude = delta > 0.0 ? delta : min_comp / 16.0;
        pert.seed = seed;
        const auto rep = check_theorem5(x_hat, pert, cfg, horizon, min_comp);
        if (rep.precondition_violated && !allow_violation) {
            std::cerr << "verify: delta >= gamma/8, not covered by the "
                         "theorem (use --allow-violation to report anyway)\n";
            return kExitPrecondition;
        }
        report = stability_report_to_json(rep);
    } else { // window sensitivity
        std::vector<ManifestEntry> entries;
        try {
            entries = parse_manifest(read_file(manifest_path));
        } catch (const std::exception& e) {
            std::cerr << "verify: " << e.what() << "\n";
            return kExitManifestParse;
        }
        std::vector<std::pair<Signal, std::string>> corpus;
        for (const auto& e : entries)
            corpus.emplace_back(read_wav(audio_dir + "/" + wav_name(e)),
                                e.label);
        const std::vector<WindowKind> windows = {
            WindowKind::Rectangular, parse_window(window_flag)};
        report = window_report_to_json(window_sensitivity(corpus, windows));
    }
    if (out_path.empty())
        std::cout << report << "\n";
    else
        write_file_atomic(out_path, report);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"phoneme pattern extraction, Riccati competitive learning, "
                 "and Voronoi recognition"};
    app.require_subcommand(1);

    // synth
    auto* synth = app.add_subcommand("synth", "synthesize WAVs from a manifest");
    std::string manifest, out_dir = ".";
    int rate = kCorpusRate;
    synth->add_option("--manifest", manifest, "JSONL manifest")->required();
    synth->add_option("--out", out_dir, "output directory")->required();
    synth->add_option("--rate", rate, "sample rate (Hz)");

    // extract
    auto* extract = app.add_subcommand("extract", "extract pattern vectors");
    std::string audio_dir, patterns_out, window = "rect", dump_spectra;
    std::size_t stride = 256;
    double gamma = 0.9e-4;
    extract->add_option("--manifest", manifest, "JSONL manifest")->required();
    extract->add_option("--audio", audio_dir, "directory of WAVs")->required();
    extract->add_option("--out", patterns_out, "output pattern file")
        ->required();
    extract->add_option("--window", window, "rect|hanning|welch|parzen")
        ->check(CLI::IsMember({"rect", "hanning", "welch", "parzen"}));
    extract->add_option("--stride", stride, "block stride in samples");
    extract->add_option("--gamma", gamma, "component floor");
    extract->add_option("--dump-spectra", dump_spectra,
                        "also write averaged spectra as JSON");

    // train
    auto* train_cmd = app.add_subcommand("train", "train the network");
    std::string patterns_in, model_out, partition_out;
    NetworkConfig cfg;
    std::size_t epochs = 150;
    std::uint64_t seed = 0;
    double jitter = 1e-3;
    train_cmd->add_option("--patterns", patterns_in, "pattern file")
        ->required();
    train_cmd->add_option("--out-model", model_out, "model JSON")->required();
    train_cmd->add_option("--out-partition", partition_out,
                          "partition JSON built from the training patterns");
    train_cmd->add_option("--neurons", cfg.n_neurons, "output neurons");
    train_cmd->add_option("--alpha", cfg.alpha, "alpha > 0");
    train_cmd->add_option("--beta", cfg.beta, "beta > 0");
    train_cmd->add_option("--gamma", cfg.gamma, "component floor");
    train_cmd->add_option("--dt", cfg.dt, "Euler step");
    train_cmd->add_option("--epochs", epochs, "passes over the pattern file");
    train_cmd->add_option("--seed", seed, "init jitter seed");
    train_cmd->add_option("--jitter", jitter, "init jitter magnitude");

    // recognize
    auto* rec = app.add_subcommand("recognize", "classify patterns");
    std::string model_in, partition_in, report_out;
    rec->add_option("--model", model_in, "model JSON")->required();
    rec->add_option("--partition", partition_in, "partition JSON")->required();
    rec->add_option("--patterns", patterns_in, "pattern file")->required();
    rec->add_option("--out", report_out, "report file")->required();

    // verify
    auto* verify = app.add_subcommand("verify", "numerical theorem checks");
    std::string theorem, pert_kind = "sin";
    double v_alpha = 1.0, v_beta = 1.0, v_gamma = 0.9e-4, v_delta = 0.0,
           v_dt = 0.1;
    std::size_t v_steps = 150, v_horizon = 0;
    std::uint64_t v_seed = 0;
    bool allow_violation = false;
    verify->add_option("--theorem", theorem, "1|3|5|window")
        ->required()
        ->check(CLI::IsMember({"1", "3", "5", "window"}));
    verify->add_option("--alpha", v_alpha, "alpha");
    verify->add_option("--beta", v_beta, "beta");
    verify->add_option("--gamma", v_gamma, "gamma (theorem 3)");
    verify->add_option("--delta", v_delta,
                       "perturbation amplitude (theorem 5)");
    verify->add_option("--dt", v_dt, "Euler step");
    verify->add_option("--steps", v_steps, "integration steps (theorem 1)");
    verify->add_option("--seed", v_seed, "seed for x_hat and perturbation");
    verify->add_option("--pert", pert_kind, "sin|noise")
        ->check(CLI::IsMember({"sin", "noise"}));
    verify->add_option("--horizon", v_horizon,
                       "steps past settle time (0 = 10x settle)");
    verify->add_flag("--allow-violation", allow_violation,
                     "emit a report even when delta >= gamma/8");
    verify->add_option("--window", window, "second window vs rectangular");
    verify->add_option("--partition", partition_in, "partition JSON");
    verify->add_option("--manifest", manifest, "corpus manifest");
    verify->add_option("--audio", audio_dir, "directory of WAVs");
    verify->add_option("--out", report_out, "report file (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (synth->parsed()) return run_synth(manifest, out_dir, rate);
        if (extract->parsed())
            return run_extract(manifest, audio_dir, window, stride, gamma,
                               patterns_out, dump_spectra);
        if (train_cmd->parsed())
            return run_train(patterns_in, cfg, epochs, seed, jitter,
                             model_out, partition_out);
        if (rec->parsed())
            return run_recognize(model_in, partition_in, patterns_in,
                                 report_out);
        if (verify->parsed())
            return run_verify(theorem == "window" ? 0 : std::stoi(theorem),
                              window, v_alpha, v_beta, v_gamma, v_delta, v_dt,
                              v_steps, v_seed, pert_kind, v_horizon,
                              allow_violation, partition_in, manifest,
                              audio_dir, report_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    return 1;
}
