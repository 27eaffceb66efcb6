// syndromelab CLI: validate state specs, run single detections, theta
// sweeps, the eight-error suite, QASM emission, and device info.
#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "syndromelab/device.hpp"
#include "syndromelab/protocol.hpp"

using namespace syndromelab;

namespace {

constexpr std::uint64_t kDefaultSeed = 8192;

/// Thrown for bad user input (spec/error strings, option combinations);
/// mapped to exit code 1, everything else to 2.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in.good()) throw ValidationError("cannot read spec file: " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

ComplementarySpec resolve_spec(const std::string& name) {
    if (name == "bell") return {1, {"00"}, +1};
    if (name == "paper13") return {6, {std::string(12, '0')}, +1};
    if (name == "paper13-mixed") return {6, {std::string(12, '0'), "1" + std::string(11, '0')}, +1};
    if (name.rfind("ghz:", 0) == 0) {
        int width = 0;
        try {
            width = std::stoi(name.substr(4));
        } catch (const std::exception&) {
            throw ValidationError("ghz:<width> needs an integer width, got " + name);
        }
        if (width < 2 || width % 2 != 0) {
            throw ValidationError("ghz width must be a positive even number of qubits");
        }
        return {width / 2, {std::string(static_cast<std::size_t>(width), '0')}, +1};
    }
    ComplementarySpec spec;
    try {
        spec = parse_spec_json(read_file(name));
    } catch (const ValidationError&) {
        throw;
    } catch (const std::exception& e) {
        throw ValidationError("cannot parse spec file " + name + ": " + e.what());
    }
    return spec;
}

ComplementarySpec resolve_valid_spec(const std::string& name) {
    const ComplementarySpec spec = resolve_spec(name);
    const ValidationReport report = validate_spec(spec);
    if (!report.ok()) {
        std::string msg = "invalid spec:";
        for (const std::string& v : report.violations) msg += "\n  - " + v;
        throw ValidationError(msg);
    }
    return spec;
}

std::optional<ErrorSpec> resolve_error(const std::string& text, int target) {
    if (text.empty()) return std::nullopt;
    try {
        return parse_error_string(text, target);
    } catch (const std::exception& e) {
        throw ValidationError("cannot parse error string \"" + text + "\": " + e.what());
    }
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("SYNDROMELAB_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw ValidationError("SYNDROMELAB_SEED is not an unsigned integer");
        }
    }
    return kDefaultSeed;
}

std::vector<double> resolve_grid(const std::string& text) {
    if (text.empty()) return default_theta_grid();
    std::vector<double> grid;
    std::istringstream in(text);
    std::string token;
    while (std::getline(in, token, ',')) {
        try {
            grid.push_back(parse_angle(token));
        } catch (const std::exception& e) {
            throw ValidationError("bad theta token \"" + token + "\": " + e.what());
        }
    }
    if (grid.empty()) throw ValidationError("--theta-grid produced an empty grid");
    return grid;
}

/// Write to --out (refusing to overwrite without --force) or stdout.
void deliver(const std::string& text, const std::string& out, bool force) {
    if (out.empty()) {
        std::fputs(text.c_str(), stdout);
        return;
    }
    if (!force && std::filesystem::exists(out)) {
        throw ValidationError("refusing to overwrite " + out + " (pass --force)");
    }
    std::ofstream file(out, std::ios::binary | std::ios::trunc);
    if (!file.good()) throw std::runtime_error("cannot open output file: " + out);
    file << text;
    if (!file.good()) throw std::runtime_error("write failed: " + out);
}

std::string format_prob(double p) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", p);
    return buf;
}

// outcome columns in table order {0,+},{1,+},{0,-},{1,-}; the probs array
// is indexed 2*s_a + s_b
constexpr std::array<int, 4> kColumnIndex = {0, 2, 1, 3};
constexpr std::array<const char*, 4> kColumnLabel = {"{0,+}", "{1,+}", "{0,-}", "{1,-}"};
constexpr std::array<const char*, 4> kColumnKey = {"p00", "p10", "p01", "p11"};

nlohmann::json probs_json(const std::array<double, 4>& probs) {
    nlohmann::json j;
    for (int col = 0; col < 4; ++col) j[kColumnKey[col]] = probs[kColumnIndex[col]];
    return j;
}

struct CommonOpts {
    std::string spec = "bell";
    std::string error;
    int target = 0;
    std::string mode = "exact";
    std::uint64_t shots = 8192;
    std::optional<std::uint64_t> seed;
    std::string out;
    std::string format = "csv";
    bool force = false;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_error, bool with_mode) {
    cmd->add_option("--spec", o.spec,
                    "spec file or builtin (bell, ghz:<width>, paper13, paper13-mixed)");
    if (with_error) {
        cmd->add_option("--error", o.error, "error string, e.g. \"X:pi/3,Y:pi/3\"");
        cmd->add_option("--target", o.target, "qubit the error acts on");
    }
    if (with_mode) {
        cmd->add_option("--mode", o.mode, "exact or shots")
            ->check(CLI::IsMember({"exact", "shots"}));
        cmd->add_option("--shots", o.shots, "samples per point in shots mode")
            ->check(CLI::PositiveNumber);
        std::uint64_t seed_value = 0;
        cmd->add_option_function<std::uint64_t>(
            "--seed", [&o](const std::uint64_t& v) { o.seed = v; }, "sampling seed");
        (void)seed_value;
    }
    cmd->add_option("--out", o.out, "output file (default: stdout)");
    cmd->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_flag("--force", o.force, "overwrite an existing output file");
}

std::array<double, 4> distribution(const ComplementarySpec& spec,
                                   const std::optional<ErrorSpec>& error, const CommonOpts& o) {
    if (o.mode == "exact") return run_exact(spec, error);
    const auto counts = run_shots(spec, error, o.shots, resolve_seed(o.seed));
    std::array<double, 4> probs{};
    for (int k = 0; k < 4; ++k) {
        probs[k] = static_cast<double>(counts[k]) / static_cast<double>(o.shots);
    }
    return probs;
}

int cmd_validate(const CommonOpts& o) {
    const ComplementarySpec spec = resolve_spec(o.spec);
    const ValidationReport report = validate_spec(spec);
    std::ostringstream out;
    if (o.format == "json") {
        nlohmann::json j;
        j["ok"] = report.ok();
        j["violations"] = report.violations;
        if (report.ok()) {
            j["n"] = spec.n;
            j["terms"] = 2 * spec.representatives.size();
            j["parity_class"] = to_string(parity_class(spec));
            j["ancilla_entangling"] = ancilla_is_entangling(spec);
        }
        out << j.dump(2) << "\n";
    } else if (report.ok()) {
        out << "ok: n=" << spec.n << ", " << 2 * spec.representatives.size()
            << " basis terms, parity class " << to_string(parity_class(spec))
            << ", appended qubit " << (ancilla_is_entangling(spec) ? "entangling" : "separable")
            << "\n";
    } else {
        out << "invalid spec:\n";
        for (const std::string& v : report.violations) out << "  - " << v << "\n";
    }
    deliver(out.str(), o.out, o.force);
    return report.ok() ? 0 : 1;
}

int cmd_run(const CommonOpts& o) {
    const ComplementarySpec spec = resolve_valid_spec(o.spec);
    const auto error = resolve_error(o.error, o.target);
    const auto probs = distribution(spec, error, o);
    int best = 0;
    for (int idx = 1; idx < 4; ++idx) {
        if (probs[idx] > probs[best]) best = idx;
    }
    const SyndromeOutcome modal = outcome_from_index(best);
    std::ostringstream out;
    if (o.format == "json") {
        nlohmann::json j;
        j["spec"] = o.spec;
        j["error"] = o.error;
        j["target"] = o.target;
        j["mode"] = o.mode;
        j["probabilities"] = probs_json(probs);
        j["modal_outcome"] = std::to_string(modal.s_a) + std::to_string(modal.s_b);
        j["class"] = to_string(classify(modal));
        out << j.dump(2) << "\n";
    } else {
        out << "outcome,probability,class\n";
        for (int col = 0; col < 4; ++col) {
            const SyndromeOutcome oc = outcome_from_index(kColumnIndex[col]);
            out << oc.s_a << oc.s_b << "," << format_prob(probs[kColumnIndex[col]]) << ","
                << to_string(classify(oc)) << "\n";
        }
        out << "# modal outcome " << modal.s_a << modal.s_b << " -> "
            << to_string(classify(modal)) << "\n";
    }
    deliver(out.str(), o.out, o.force);
    return 0;
}

int cmd_sweep(const CommonOpts& o, const std::string& axis_name, const std::string& grid_text) {
    const ComplementarySpec spec = resolve_valid_spec(o.spec);
    const SweepAxis axis = axis_name == "X"   ? SweepAxis::X
                           : axis_name == "Y" ? SweepAxis::Y
                                              : SweepAxis::Z;
    const std::vector<double> grid = resolve_grid(grid_text);
    const RunMode mode = o.mode == "exact" ? RunMode::Exact : RunMode::Shots;
    const auto rows = sweep(spec, axis, grid, o.target, mode, o.shots, resolve_seed(o.seed));
    std::ostringstream out;
    if (o.format == "json") {
        nlohmann::json j;
        j["spec"] = o.spec;
        j["axis"] = axis_name;
        j["mode"] = o.mode;
        j["rows"] = nlohmann::json::array();
        for (const SweepRow& row : rows) {
            nlohmann::json r;
            r["theta"] = row.theta;
            r["probabilities"] = probs_json(row.probs);
            r["class_mode"] = to_string(row.mode_class);
            j["rows"].push_back(r);
        }
        out << j.dump(2) << "\n";
    } else {
        out << "theta,p00,p10,p01,p11,class_mode\n";
        for (const SweepRow& row : rows) {
            out << format_prob(row.theta);
            for (int col = 0; col < 4; ++col) {
                out << "," << format_prob(row.probs[kColumnIndex[col]]);
            }
            out << "," << to_string(row.mode_class) << "\n";
        }
    }
    deliver(out.str(), o.out, o.force);
    return 0;
}

int cmd_suite(const CommonOpts& o) {
    const ComplementarySpec spec = resolve_valid_spec(o.spec);
    std::ostringstream out;
    nlohmann::json rows = nlohmann::json::array();
    if (o.format == "csv") out << "error,p00,p10,p01,p11\n";
    std::size_t index = 0;
    for (const ErrorSpec& err : named_error_suite(o.target)) {
        std::array<double, 4> probs{};
        if (o.mode == "exact") {
            probs = run_exact(spec, err);
        } else {
            const auto counts = run_shots(spec, err, o.shots, derive_seed(resolve_seed(o.seed), index));
            for (int k = 0; k < 4; ++k) {
                probs[k] = static_cast<double>(counts[k]) / static_cast<double>(o.shots);
            }
        }
        if (o.format == "json") {
            nlohmann::json r;
            r["error"] = err.label;
            r["probabilities"] = probs_json(probs);
            rows.push_back(r);
        } else {
            out << err.label;
            for (int col = 0; col < 4; ++col) out << "," << format_prob(probs[kColumnIndex[col]]);
            out << "\n";
        }
        ++index;
    }
    if (o.format == "json") {
        nlohmann::json j;
        j["spec"] = o.spec;
        j["mode"] = o.mode;
        j["rows"] = rows;
        out << j.dump(2) << "\n";
    }
    deliver(out.str(), o.out, o.force);
    return 0;
}

int cmd_emit_qasm(const CommonOpts& o) {
    const ComplementarySpec spec = resolve_valid_spec(o.spec);
    const auto error = resolve_error(o.error, o.target);
    const QasmProgram program = emit_qasm(build_circuit(spec, error));
    deliver(program.text, o.out, o.force);
    return 0;
}

int cmd_device_info(const CommonOpts& o) {
    const DeviceModel device = builtin_ibmqx5();
    std::ostringstream out;
    if (o.format == "json") {
        nlohmann::json j;
        j["name"] = device.name;
        j["qubits"] = nlohmann::json::array();
        for (std::size_t q = 0; q < device.qubits.size(); ++q) {
            const QubitParams& p = device.qubits[q];
            nlohmann::json r;
            r["qubit"] = q;
            r["frequency_ghz"] = p.frequency_ghz;
            r["relaxation_time_us"] = p.relaxation_time_us;
            r["coherence_time_us"] = p.coherence_time_us;
            r["gate_error_e3"] = p.gate_error_e3;
            r["readout_error_e2"] = p.readout_error_e2;
            for (const auto& [target, err] : p.multiqubit_gate_errors) {
                r["cx_error_e2"][std::to_string(target)] = err;
            }
            j["qubits"].push_back(r);
        }
        j["coupling"] = nlohmann::json::array();
        for (const auto& [c, t] : device.coupling) j["coupling"].push_back({c, t});
        out << j.dump(2) << "\n";
    } else {
        out << serialize_device(device);
    }
    deliver(out.str(), o.out, o.force);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"syndrome-based error detection on parity-extended entangled registers"};
    app.require_subcommand(1);

    CommonOpts validate_opts, run_opts, sweep_opts, suite_opts, qasm_opts, device_opts;
    std::string axis = "X", grid_text;

    CLI::App* validate = app.add_subcommand("validate", "check a state spec");
    add_common(validate, validate_opts, false, false);

    CLI::App* run = app.add_subcommand("run", "single detection run");
    add_common(run, run_opts, true, true);

    CLI::App* sw = app.add_subcommand("sweep", "rotation-angle sweep");
    add_common(sw, sweep_opts, false, true);
    sw->add_option("--axis", axis, "rotation axis")->check(CLI::IsMember({"X", "Y", "Z"}));
    sw->add_option("--target", sweep_opts.target, "qubit the rotation acts on");
    sw->add_option("--theta-grid", grid_text,
                   "comma-separated angles, e.g. \"0,pi/3,-2pi/3\" (default: k*pi/15 grid)");

    CLI::App* suite = app.add_subcommand("suite", "eight-error reference suite");
    add_common(suite, suite_opts, false, true);
    suite->add_option("--target", suite_opts.target, "qubit the errors act on");

    CLI::App* qasm = app.add_subcommand("emit-qasm", "emit the circuit as OpenQASM 2.0");
    add_common(qasm, qasm_opts, true, false);

    CLI::App* device = app.add_subcommand("device-info", "print the embedded 16-qubit device data");
    device->add_option("--out", device_opts.out, "output file (default: stdout)");
    device->add_option("--format", device_opts.format, "csv (tabular text) or json")
        ->check(CLI::IsMember({"csv", "json"}));
    device->add_flag("--force", device_opts.force, "overwrite an existing output file");

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate->parsed()) return cmd_validate(validate_opts);
        if (run->parsed()) return cmd_run(run_opts);
        if (sw->parsed()) return cmd_sweep(sweep_opts, axis, grid_text);
        if (suite->parsed()) return cmd_suite(suite_opts);
        if (qasm->parsed()) return cmd_emit_qasm(qasm_opts);
        if (device->parsed()) return cmd_device_info(device_opts);
    } catch (const ValidationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
