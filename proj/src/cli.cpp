#include "turbobec/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <ostream>
#include <sstream>

#include "turbobec/decode.hpp"
#include "turbobec/sim.hpp"
#include "turbobec/stopsets.hpp"
#include "turbobec/uniform.hpp"

namespace turbobec {

namespace {

TurboCode load_code(const std::string& code_path, const std::string& interleaver_path) {
    std::ifstream cf(code_path);
    if (!cf.good()) throw DataError("cannot open code spec: " + code_path);
    TurboCodeSpec spec = read_code_spec(cf);
    std::ifstream pf(interleaver_path);
    if (!pf.good()) throw DataError("cannot open interleaver: " + interleaver_path);
    spec.interleaver = read_interleaver(pf);
    return make_turbo_code(spec);
}

BitVec parse_bits(const std::string& s) {
    BitVec v(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] != '0' && s[i] != '1') throw DataError("expected a 0/1 string");
        v.set(i, s[i] == '1');
    }
    return v;
}

ReceivedWord parse_received(const std::string& s) {
    ReceivedWord r;
    for (char c : s) {
        switch (c) {
            case '0': r.symbols.push_back(Sym::Zero); break;
            case '1': r.symbols.push_back(Sym::One); break;
            case 'e':
            case '?':
            case '*': r.symbols.push_back(Sym::Erased); break;
            default: throw DataError("received symbols must be 0, 1 or e");
        }
    }
    return r;
}

std::string estimate_string(const ReceivedWord& est) {
    std::string s;
    for (Sym y : est.symbols) s += y == Sym::Erased ? 'e' : (y == Sym::One ? '1' : '0');
    return s;
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(std::stoi(item));
    return out;
}

std::vector<double> parse_double_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(std::stod(item));
    return out;
}

ConvCodeSpec parse_constituent(const std::string& s) {
    if (s == "hamming74") return ConvCodeSpec::hamming74();
    if (s.rfind("conv:", 0) == 0) {
        auto body = s.substr(5);
        auto comma = body.find(',');
        if (comma == std::string::npos) throw DataError("conv constituent needs two polynomials");
        return ConvCodeSpec::rate_half(poly_from_octal(body.substr(0, comma)),
                                       poly_from_octal(body.substr(comma + 1)));
    }
    throw DataError("unknown constituent: " + s + " (use hamming74 or conv:H1,H2 in octal)");
}

const char* status_name(DecodeStatus s) {
    switch (s) {
        case DecodeStatus::Recovered: return "recovered";
        case DecodeStatus::Stalled: return "stalled";
        case DecodeStatus::Ambiguous: return "ambiguous";
        case DecodeStatus::BudgetExhausted: return "budget-exhausted";
    }
    return "?";
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"turbo codes on the binary erasure channel"};
    app.require_subcommand(1);

    std::string code_path, interleaver_path, info_bits, received, output_path;
    std::string decoder = "improved", discipline = "lifo", constituent = "hamming74";
    std::string epsilons = "0.5", itype = "random", dither_read, dither_write, positions;
    long l_max = -1, frames = 1000;
    uint64_t seed = 1;
    int tau = 0, ilen = 4, max_total = 0, threads = 0, length = 0, start = 0, prime = 1;
    int prune_alpha = 0;
    bool use_brute = false, force_emission = false;

    auto add_code_opts = [&](CLI::App* sub) {
        sub->add_option("--code", code_path, "code spec file")->required();
        sub->add_option("--interleaver", interleaver_path, "interleaver file")->required();
    };

    CLI::App* enc = app.add_subcommand("encode", "encode an information block");
    add_code_opts(enc);
    enc->add_option("--info", info_bits, "information bits as a 0/1 string")->required();

    CLI::App* dec = app.add_subcommand("decode", "decode a received word");
    add_code_opts(dec);
    dec->add_option("--received", received, "received symbols over 0/1/e")->required();
    dec->add_option("--decoder", decoder, "basic | improved");
    dec->add_option("--l-max", l_max, "iteration budget, -1 = unbounded");
    dec->add_option("--discipline", discipline, "lifo | fifo guess queue");
    dec->add_flag("--force-emission", force_emission,
                  "emit the first recovered codeword without the ambiguity check");

    CLI::App* sim = app.add_subcommand("simulate", "Monte-Carlo frame error rates");
    add_code_opts(sim);
    sim->add_option("--epsilon", epsilons, "comma-separated erasure probabilities")->required();
    sim->add_option("--frames", frames, "frames per grid point");
    sim->add_option("--l-max", l_max, "iteration budget, -1 = unbounded");
    sim->add_option("--decoder", decoder, "basic | improved | ml");
    sim->add_option("--discipline", discipline, "lifo | fifo");
    sim->add_option("--seed", seed, "rng seed");
    sim->add_option("--threads", threads, "worker threads (default: TURBOBEC_THREADS or 1)");
    sim->add_option("--output", output_path, "CSV output path (default stdout)");

    CLI::App* enu = app.add_subcommand("enumerate", "enumerate turbo stopping sets");
    add_code_opts(enu);
    enu->add_option("--tau", tau, "maximum stopping set size")->required();
    enu->add_option("--prune-alpha", prune_alpha,
                    "drop extended edges of subspace dimension >= alpha (approximate)");
    enu->add_flag("--brute-force", use_brute, "use the subset-scan oracle instead of the search");
    enu->add_option("--output", output_path, "report path (default stdout)");

    CLI::App* uni = app.add_subcommand("uniform", "uniform-interleaver enumerating functions");
    uni->add_option("--constituent", constituent, "hamming74 or conv:H1,H2 (octal)");
    uni->add_option("--interleaver-length", ilen, "interleaver length I")->required();
    uni->add_option("--max-total", max_total,
                    "support-size truncation for convolutional constituents");

    CLI::App* chk = app.add_subcommand("check-stopset", "test a position set");
    add_code_opts(chk);
    chk->add_option("--positions", positions, "comma-separated turbo codeword positions")
        ->required();

    CLI::App* mki = app.add_subcommand("make-interleaver", "generate an interleaver file");
    mki->add_option("--length", length, "interleaver length")->required();
    mki->add_option("--type", itype, "random | drp | identity");
    mki->add_option("--seed", seed, "seed for random interleavers");
    mki->add_option("--start", start, "drp: core start offset");
    mki->add_option("--prime", prime, "drp: core multiplier, coprime to the length");
    mki->add_option("--read-dither", dither_read, "drp: comma-separated read dither");
    mki->add_option("--write-dither", dither_write, "drp: comma-separated write dither");
    mki->add_option("--output", output_path, "interleaver path (default stdout)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << e.what() << "\n" << app.help();
        return 1;
    }

    try {
        if (enc->parsed()) {
            TurboCode code = load_code(code_path, interleaver_path);
            BitVec info = parse_bits(info_bits);
            out << code.encode(info).to_string() << "\n";
        } else if (dec->parsed()) {
            TurboCode code = load_code(code_path, interleaver_path);
            ReceivedWord r = parse_received(received);
            DecodeOutcome o;
            if (decoder == "basic") {
                o = turbo_decode(r, code, l_max);
            } else if (decoder == "improved") {
                ImprovedOptions opt;
                opt.l_max = l_max;
                opt.discipline = discipline == "fifo" ? GuessQueue::Fifo : GuessQueue::Lifo;
                opt.ambiguity_check = !force_emission;
                o = improved_decode(r, code, opt);
            } else {
                throw DataError("unknown decoder: " + decoder);
            }
            out << "status " << status_name(o.status) << "\n";
            out << "estimate " << estimate_string(o.estimate) << "\n";
            out << "iterations " << o.iterations << "\n";
            if (!o.residual.empty()) {
                out << "residual ";
                for (std::size_t i = 0; i < o.residual.size(); ++i)
                    out << (i ? "," : "") << o.residual[i];
                out << "\n";
            }
        } else if (sim->parsed()) {
            TurboCode code = load_code(code_path, interleaver_path);
            SimConfig cfg;
            cfg.epsilons = parse_double_list(epsilons);
            cfg.frames = frames;
            cfg.l_max = l_max;
            cfg.seed = seed;
            cfg.threads = threads;
            cfg.discipline = discipline == "fifo" ? GuessQueue::Fifo : GuessQueue::Lifo;
            if (decoder == "basic") cfg.decoder = DecoderKind::Basic;
            else if (decoder == "improved") cfg.decoder = DecoderKind::Improved;
            else if (decoder == "ml") cfg.decoder = DecoderKind::MlOracle;
            else throw DataError("unknown decoder: " + decoder);
            auto records = simulate_fer(code, cfg);
            if (output_path.empty()) {
                write_sim_csv(out, records);
            } else {
                std::ofstream f(output_path);
                if (!f.good()) throw DataError("cannot open output: " + output_path);
                write_sim_csv(f, records);
            }
            for (const auto& r : records)
                err << "epsilon " << r.epsilon << ": " << r.frame_errors << "/" << r.frames
                    << " frame errors in " << r.wall_seconds << " s\n";
        } else if (enu->parsed()) {
            TurboCode code = load_code(code_path, interleaver_path);
            std::vector<StoppingSet> sets;
            bool exact = true;
            if (use_brute) {
                sets = brute_force_stopping_sets(code, tau);
            } else {
                GpbResult res = gpb_enumerate(
                    code, tau,
                    prune_alpha > 0 ? std::optional<int>(prune_alpha) : std::nullopt);
                sets = std::move(res.sets);
                exact = res.exact;
            }
            if (output_path.empty()) {
                write_stopset_report(out, code, sets, tau, exact);
            } else {
                std::ofstream f(output_path);
                if (!f.good()) throw DataError("cannot open output: " + output_path);
                write_stopset_report(f, code, sets, tau, exact);
            }
        } else if (uni->parsed()) {
            ConvCodeSpec cc = parse_constituent(constituent);
            EnumFn A, A1;
            if (cc.nu == 0 && ilen == cc.k) {
                ConstituentCode block = terminated_constituent(cc, ilen);
                A = sirsef_block(block);
                A1 = sirsef_block(block, SubcodeMode::DimensionOne);
            } else {
                if (max_total <= 0)
                    throw DataError("convolutional constituents need --max-total");
                A = sirsef_conv(cc, ilen, max_total);
                A1 = sirsef_conv(cc, ilen, max_total, SubcodeMode::DimensionOne);
            }
            EnumFn S = irtssef_uniform(A, A, ilen);
            out << "SIRSEF A(W,Z) = " << to_string_bivariate(A) << "\n";
            out << "IRTSSEF S(W,Z) = " << to_string_bivariate(S) << "\n";
            out << "TSSEF S(X) = " << to_string_univariate(tssef(S)) << "\n";
            out << "WEF(X) = "
                << to_string_univariate(tssef(irtssef_uniform(A1, A1, ilen), TssefMode::Codeword))
                << "\n";
        } else if (chk->parsed()) {
            TurboCode code = load_code(code_path, interleaver_path);
            std::vector<int> S = parse_int_list(positions);
            std::sort(S.begin(), S.end());
            S.erase(std::unique(S.begin(), S.end()), S.end());
            for (int p : S)
                if (p < 0 || p >= code.N) throw DataError("position out of range");
            if (!is_turbo_stopping_set(code, S)) {
                out << "stopping set: no\n";
            } else if (is_codeword_support(code, S)) {
                out << "stopping set: yes (codeword)\n";
            } else {
                out << "stopping set: yes\n";
            }
        } else if (mki->parsed()) {
            std::vector<int> perm;
            if (itype == "random") {
                perm = random_interleaver(length, seed);
            } else if (itype == "identity") {
                perm.resize(length);
                for (int i = 0; i < length; ++i) perm[i] = i;
            } else if (itype == "drp") {
                std::vector<int> rd = parse_int_list(dither_read);
                std::vector<int> wd = parse_int_list(dither_write);
                perm = drp_interleaver(length, start, prime, rd, wd);
            } else {
                throw DataError("unknown interleaver type: " + itype);
            }
            if (output_path.empty()) {
                write_interleaver(out, perm);
            } else {
                std::ofstream f(output_path);
                if (!f.good()) throw DataError("cannot open output: " + output_path);
                write_interleaver(f, perm);
            }
        }
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::runtime_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

}  // namespace turbobec
