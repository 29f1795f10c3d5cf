// tnnsim: encoder, cost-model, gamma-control and TNN training experiments.
//
// Exit codes: 0 success, 1 validation error, 2 scenario/test failure.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "tnn/config.hpp"
#include "tnn/dataio.hpp"
#include "tnn/enc_pipeline.hpp"
#include "tnn/encode.hpp"
#include "tnn/gamma.hpp"
#include "tnn/metrics.hpp"
#include "tnn/network.hpp"

namespace fs = std::filesystem;
using namespace tnn;

namespace {

constexpr int kOk = 0;
constexpr int kValidation = 1;
constexpr int kFailure = 2;

std::ofstream open_out(const fs::path& p, bool binary = false) {
    std::ofstream out(p, binary ? std::ios::binary : std::ios::out);
    if (!out) throw std::runtime_error("cannot write '" + p.string() + "'");
    return out;
}

// ---- encode ---------------------------------------------------------------

struct EncodeArgs {
    std::string idx;
    std::string labels;
    std::string encoder = "posneg";
    unsigned threshold = 127;
    unsigned period = 16;
    std::string out = "encoded";
};

int run_encode(const EncodeArgs& a) {
    EncoderKind kind;
    kind.family = parse_encoder_family(a.encoder);
    if (a.threshold > 255) throw std::invalid_argument("--threshold must be in [0,255]");
    kind.threshold = static_cast<std::uint8_t>(a.threshold);
    kind.period = a.period;
    kind.validate();

    const auto ds = load_idx_dataset(a.idx, a.labels);
    const std::string prefix = a.out;

    if (kind.family == EncoderKind::Family::posneg) {
        std::vector<PixelImage> pos, neg;
        for (const auto& img : ds.images) {
            PixelImage p{{}, img.width, img.height, img.label}, n = p;
            for (auto px : img.pixels) {
                const auto bits = posneg_bits(px, kind.threshold);
                p.pixels.push_back(bits.pos);
                n.pixels.push_back(bits.neg);
            }
            pos.push_back(std::move(p));
            neg.push_back(std::move(n));
        }
        auto pos_out = open_out(prefix + "_pos.txt");
        auto neg_out = open_out(prefix + "_neg.txt");
        write_linetext(pos, pos_out);
        write_linetext(neg, neg_out);
    } else {
        std::vector<SpikeVolley> volleys;
        for (const auto& img : ds.images) volleys.push_back(encode_image(img, kind));
        auto out = open_out(prefix + "_spikes.txt");
        write_spike_linetext(volleys, out);
    }
    if (!a.labels.empty()) {
        auto out = open_out(prefix + "_labels.txt");
        for (const auto& img : ds.images) out << int{*img.label} << '\n';
    }
    std::cerr << "encoded " << ds.images.size() << " image(s) with " << a.encoder << '\n';
    return kOk;
}

// ---- cost-sweep -----------------------------------------------------------

struct SweepArgs {
    std::string axis = "comparator_count";
    std::vector<double> values;
    std::uint64_t comparators = 49;
    double frequency = 1e9;
    std::uint64_t pixels = 784;
    std::string out;
};

int run_cost_sweep(const SweepArgs& a) {
    const SweepAxis axis = parse_sweep_axis(a.axis);
    std::vector<double> values = a.values;
    if (values.empty()) {
        switch (axis) {
        case SweepAxis::comparator_count: values = {1, 2, 4, 8, 16, 49, 100, 196, 250, 400, 625, 784}; break;
        case SweepAxis::frequency: values = {1e8, 1e9, 1e10, 2.5e10, 1e11}; break;
        case SweepAxis::image_size: values = {49, 784, 1080, 2160}; break;
        }
    }
    ComparatorBankConfig base{a.comparators, a.frequency, a.pixels};
    const auto rows = sweep(axis, values, base, UnitCostParams{});
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (const auto* e = std::get_if<CostError>(&rows[i]))
            std::cerr << "row " << i << " (" << a.axis << "=" << values[i] << "): " << e->what() << '\n';
    }
    if (a.out.empty()) {
        write_cost_csv(rows, std::cout);
    } else {
        auto out = open_out(a.out);
        write_cost_csv(rows, out);
    }
    return kOk;
}

// ---- verify-gamma ---------------------------------------------------------

struct GammaArgs {
    unsigned period = 16;
    std::size_t columns = 3;
    std::string fault;
};

int run_verify_gamma(const GammaArgs& a) {
    GammaVerifyOptions opts;
    opts.period = a.period;
    opts.columns = a.columns;
    if (a.fault == "stuck-latch") opts.stuck_latches = true;
    else if (!a.fault.empty()) throw std::invalid_argument("unknown fault '" + a.fault + "'");

    const auto results = verify_gamma(opts);
    int failed = 0;
    for (std::size_t i = 0; i < results.size(); ++i) {
        const auto& r = results[i];
        std::cout << "scenario " << i + 1 << " (" << r.name << "): " << (r.passed ? "PASS" : "FAIL") << "  "
                  << r.detail << '\n';
        failed += r.passed ? 0 : 1;
    }
    std::cout << results.size() - failed << "/" << results.size() << " passed\n";
    return failed ? kFailure : kOk;
}

// ---- train / infer / report -----------------------------------------------

LabeledDataset load_split(const fs::path& images, const fs::path& labels, std::size_t limit, const char* what) {
    if (images.empty()) throw std::invalid_argument(std::string(what) + "_images missing from config");
    return load_idx_dataset(images.string(), labels.string(), limit);
}

std::vector<std::uint8_t> labels_of(const LabeledDataset& ds) {
    std::vector<std::uint8_t> out;
    for (const auto& img : ds.images) {
        if (!img.label) return {};
        out.push_back(*img.label);
    }
    return out;
}

std::size_t input_width(const LabeledDataset& ds) {
    if (ds.images.empty()) throw std::invalid_argument("dataset is empty");
    return 2 * ds.images.front().size();
}

void write_run(const fs::path& dir, const std::string& stem, const RunSummary& s) {
    auto w = open_out(dir / (stem + "_winners.csv"));
    write_winners_csv(s, w);
    auto t = open_out(dir / (stem + "_trace.csv"));
    write_trace_csv(s.trace, t);
    auto b = open_out(dir / (stem + "_trace.bin"), true);
    write_trace_binary(s.trace, b);
}

struct Phase {
    RunSummary summary;
    std::vector<std::uint8_t> labels;
};

Phase do_train(const RunConfig& cfg, Network& net) {
    const auto ds = load_split(cfg.train_images, cfg.train_labels, cfg.train_count, "train");
    Phase p{net.train(ds, cfg.epochs), {}};
    const auto labels = labels_of(ds);
    for (std::uint32_t e = 0; e < cfg.epochs && !labels.empty(); ++e) p.labels.insert(p.labels.end(), labels.begin(), labels.end());
    write_run(cfg.out_dir, "train", p.summary);
    auto wf = open_out(cfg.out_dir / "weights.bin", true);
    net.save_weights(wf);
    return p;
}

Phase do_infer(const RunConfig& cfg, Network& net) {
    const auto ds = load_split(cfg.test_images, cfg.test_labels, cfg.test_count, "test");
    Phase p{net.infer(ds), labels_of(ds)};
    write_run(cfg.out_dir, "test", p.summary);
    return p;
}

Network make_network(const RunConfig& cfg) {
    const fs::path probe = !cfg.train_images.empty() ? cfg.train_images : cfg.test_images;
    const auto ds = load_split(probe, {}, 1, "train");
    return Network(cfg.network, input_width(ds));
}

void write_phase_tables(const RunConfig& cfg, const std::string& stem, const Phase& p) {
    const auto T = cfg.network.gamma_period;
    const auto h = spike_histogram(p.summary, T);
    auto out = open_out(cfg.out_dir / (stem + "_histogram.csv"));
    write_histogram_csv({{to_string(cfg.network.encoder.family), h}}, out);
}

int run_train(const std::string& config_path) {
    const auto cfg = load_run_config(config_path);
    fs::create_directories(cfg.out_dir);
    auto net = make_network(cfg);
    const auto p = do_train(cfg, net);
    write_phase_tables(cfg, "train", p);
    std::cerr << "trained " << p.summary.gamma_cycles << " gamma cycles, " << p.summary.total_clock_cycles
              << " clock cycles\n";
    return kOk;
}

int run_infer(const std::string& config_path) {
    const auto cfg = load_run_config(config_path);
    fs::create_directories(cfg.out_dir);
    auto net = make_network(cfg);
    const auto weights = cfg.out_dir / "weights.bin";
    if (fs::exists(weights)) {
        std::ifstream in(weights, std::ios::binary);
        net.load_weights(in);
    } else {
        std::cerr << "no " << weights.string() << "; inferring with initial weights\n";
    }
    const auto p = do_infer(cfg, net);
    write_phase_tables(cfg, "test", p);
    return kOk;
}

int run_report(const std::string& config_path) {
    const auto cfg = load_run_config(config_path);
    fs::create_directories(cfg.out_dir);
    auto net = make_network(cfg);
    const auto train = do_train(cfg, net);
    const auto test = do_infer(cfg, net);
    write_phase_tables(cfg, "train", train);
    write_phase_tables(cfg, "test", test);

    const auto T = cfg.network.gamma_period;
    const std::string enc = to_string(cfg.network.encoder.family);
    std::ostringstream md;
    md << "# Run report\n\n";
    md << "encoder " << enc << ", threshold " << cfg.network.threshold_for(cfg.network.layers.size() - 1)
       << ", gamma period " << T << ", mode " << to_string(cfg.network.mode) << ", seed " << cfg.network.seed
       << "\n\n";
    md << "## Training spike-time occurrences\n\n";
    write_histogram_markdown({{enc, spike_histogram(train.summary, T)}}, md);
    md << "\n## Testing spike-time occurrences\n\n";
    write_histogram_markdown({{enc, spike_histogram(test.summary, T)}}, md);

    std::ostringstream thr;
    thr << cfg.network.threshold_for(cfg.network.layers.size() - 1);
    if (!test.labels.empty()) {
        md << "\n## Purity\n\n";
        write_purity_markdown("Threshold", {thr.str()}, {enc}, {{purity(test.summary, test.labels).purity}}, md);
    }

    auto savings_csv = open_out(cfg.out_dir / "savings.csv");
    savings_csv << "phase,gamma_cycles,clock_cycles,realized,potential\n";
    md << "\n## Gamma-cycle savings\n\n| Phase | Cycles | Clock cycles | Realized | Potential |\n|---|---|---|---|---|\n";
    for (const auto& [name, ph] : {std::pair<std::string, const Phase*>{"train", &train}, {"test", &test}}) {
        const auto s = cycle_savings(ph->summary.trace, T);
        savings_csv << name << ',' << ph->summary.gamma_cycles << ',' << ph->summary.total_clock_cycles << ','
                    << s.realized << ',' << s.potential << '\n';
        md << "| " << name << " | " << ph->summary.gamma_cycles << " | " << ph->summary.total_clock_cycles << " | "
           << s.realized << " | " << s.potential << " |\n";
    }
    auto report = open_out(cfg.out_dir / "report.md");
    report << md.str();
    std::cout << md.str();
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Temporal neural network micro-architecture simulator"};
    app.require_subcommand(1);

    EncodeArgs enc;
    auto* encode = app.add_subcommand("encode", "Encode IDX images into pos/neg or spike-time line-text files");
    encode->add_option("--idx", enc.idx, "IDX image file")->required();
    encode->add_option("--labels", enc.labels, "IDX label file");
    encode->add_option("--encoder", enc.encoder, "posneg | linear | log");
    encode->add_option("--threshold", enc.threshold, "posneg pixel threshold");
    encode->add_option("--period", enc.period, "gamma period T for linear/log");
    encode->add_option("--out", enc.out, "output path prefix");

    SweepArgs sw;
    auto* cost = app.add_subcommand("cost-sweep", "Encoder cost model sweep as CSV");
    cost->add_option("--axis", sw.axis, "comparator_count | frequency | image_size");
    cost->add_option("--values", sw.values, "sweep points (comma separated)")->delimiter(',');
    cost->add_option("--comparators", sw.comparators, "base comparator count");
    cost->add_option("--frequency", sw.frequency, "base clock frequency in Hz");
    cost->add_option("--pixels", sw.pixels, "base pixels per image");
    cost->add_option("--out", sw.out, "CSV path (default stdout)");

    GammaArgs ga;
    auto* verify = app.add_subcommand("verify-gamma", "Run the grst generator/controller functional scenarios");
    verify->add_option("--period", ga.period, "gamma period");
    verify->add_option("--columns", ga.columns, "monitored columns");
    verify->add_option("--inject-fault", ga.fault, "stuck-latch");

    std::string config_path;
    auto* train = app.add_subcommand("train", "Train from a config file");
    train->add_option("config", config_path, "run config")->required();
    auto* infer = app.add_subcommand("infer", "Run the test split with STDP disabled");
    infer->add_option("config", config_path, "run config")->required();
    auto* report = app.add_subcommand("report", "Train, test and write spike-time, purity and savings tables");
    report->add_option("config", config_path, "run config")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kValidation;
    }

    try {
        if (*encode) return run_encode(enc);
        if (*cost) return run_cost_sweep(sw);
        if (*verify) return run_verify_gamma(ga);
        if (*train) return run_train(config_path);
        if (*infer) return run_infer(config_path);
        if (*report) return run_report(config_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kValidation;
    }
    return kValidation;
}
