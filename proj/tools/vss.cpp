// vss.cpp - command-line front end: deal, verify, recover, tamper, estimate
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vss/vss.hpp"

namespace {

// Exit codes: 0 pass, 1 verification failure, 2 usage/format error,
// 3 dealing inconsistency, 4 insufficient shares.
constexpr int kExitPass = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInconsistent = 3;
constexpr int kExitInsufficient = 4;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write " + path);
    out << content;
    if (!out) throw UsageError("cannot write " + path);
}

std::vector<std::string> split_commas(const std::string& text) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) out.push_back(item);
    return out;
}

std::uint64_t parse_uint(const std::string& text, const char* what) {
    if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos ||
        text.size() > 19)
        throw UsageError(std::string("bad ") + what + ": " + text);
    return std::stoull(text);
}

std::vector<int> parse_int_list(const std::string& text, const char* what) {
    std::vector<int> out;
    for (const std::string& item : split_commas(text))
        out.push_back(static_cast<int>(parse_uint(item, what)));
    if (out.empty()) throw UsageError(std::string("empty ") + what);
    return out;
}

// Builtin names resolve directly; anything else is one or more truth-table
// files (comma-separated for a vector control), relative paths resolved
// against base_dir.
vss::ControlFunction resolve_control(const std::string& name, int l, int m,
                                     const std::string& base_dir) {
    if (name == "example_table") {
        if (l != 5) throw UsageError("example_table needs l=5");
        if (m != 1) throw UsageError("example_table provides one output bit");
        return vss::ControlFunction::from_table(vss::example_table());
    }
    if (name == "parity") {
        if (m != 1) throw UsageError("parity provides one output bit");
        return vss::ControlFunction::from_table(vss::parity_table(l));
    }
    if (name == "verhoeff") return vss::ControlFunction::verhoeff_digit(l, m);
    if (name == "hash") return vss::ControlFunction::mix64_hash(l, m);

    std::vector<vss::TruthTable> tables;
    for (const std::string& part : split_commas(name)) {
        if (part.empty()) throw UsageError("empty table path in f name");
        std::filesystem::path path(part);
        if (path.is_relative() && !base_dir.empty()) path = std::filesystem::path(base_dir) / path;
        vss::TruthTable tbl = vss::parse_table(read_file(path.string()));
        if (tbl.l != l) throw UsageError("table " + part + " has wrong input width");
        tables.push_back(std::move(tbl));
    }
    if (static_cast<int>(tables.size()) != m)
        throw UsageError("f provides " + std::to_string(tables.size()) +
                         " output bits but m=" + std::to_string(m));
    return vss::ControlFunction::from_tables(std::move(tables));
}

struct DealArgs {
    std::string scheme;
    std::uint64_t p = 0;
    int t = 0;
    int n = 0;
    int v = 0;
    int l = 0;
    int m = 0;
    std::string secret;
    std::string f_name;
    std::string strategy = "constrained";
    std::uint64_t seed = 0;
    std::string coeffs;
    std::string out;
};

int run_deal(const DealArgs& args) {
    std::string secret_text = args.secret;
    if (secret_text.empty()) {
        if (!std::getline(std::cin, secret_text) || secret_text.empty())
            throw UsageError("no secret given (use --secret or standard input)");
    }
    std::uint64_t secret = parse_uint(secret_text, "secret");

    vss::RandomSource rng(args.seed);
    std::vector<vss::PlainShare> plain;
    std::uint32_t header_p = 0;
    int t = args.t, l = args.l;

    std::optional<vss::SchemeInstance> scheme;
    if (args.scheme == "shamir") {
        if (args.p < 2) throw UsageError("shamir needs --p");
        if (t < 1) throw UsageError("shamir needs --t");
        vss::ShamirInstance inst(static_cast<std::uint32_t>(args.p), t, args.n);
        header_p = inst.p;
        l = inst.l;
        if (secret >= inst.p) throw UsageError("secret must be below p");
        if (!args.coeffs.empty()) {
            std::vector<std::uint32_t> coeffs;
            for (int c : parse_int_list(args.coeffs, "coefficient"))
                coeffs.push_back(static_cast<std::uint32_t>(c));
            plain = vss::shamir_deal(static_cast<std::uint32_t>(secret), inst, coeffs);
        } else {
            plain = vss::shamir_deal(static_cast<std::uint32_t>(secret), inst, rng);
        }
        scheme = inst;
    } else {
        if (l < 1) throw UsageError("kgh needs --l");
        if (args.p != 0) throw UsageError("kgh takes no --p");
        if (t != 0 && t != args.n) throw UsageError("kgh needs t = n");
        t = args.n;
        vss::KghInstance inst(args.n, l);
        if (l < 64 && secret >= (std::uint64_t{1} << l))
            throw UsageError("secret does not fit width l");
        plain = vss::kgh_deal(vss::to_bits(secret, static_cast<std::size_t>(l)), inst, rng);
        scheme = inst;
    }

    if (args.v < 1 || args.v > t) throw UsageError("need 1 <= v <= t");
    vss::VerificationStructure structure = vss::build_vtn_structure(args.v, t, args.n);

    int m = args.m;
    if (args.f_name == "example_table" || args.f_name == "parity") {
        if (m == 0) m = 1;
    } else if (args.f_name == "verhoeff" || args.f_name == "hash") {
        if (m == 0) m = 1;
    } else {
        int count = static_cast<int>(split_commas(args.f_name).size());
        if (m == 0) m = count;
    }
    vss::ControlFunction f = resolve_control(args.f_name, l, m, "");

    vss::DealingStrategy strategy = args.strategy == "direct" ? vss::DealingStrategy::direct
                                                              : vss::DealingStrategy::constrained;
    vss::DealOutcome outcome = vss::assign_controls(plain, structure, f, vss::Combiner::xor_fold(),
                                                    vss::Combiner::xor_fold(), strategy);
    if (const auto* failure = std::get_if<vss::DealFailure>(&outcome)) {
        std::cerr << failure->message() << "\n";
        return kExitInconsistent;
    }

    vss::ShareFile file;
    file.scheme = args.scheme;
    file.p = header_p;
    file.t = t;
    file.n = args.n;
    file.v = args.v;
    file.l = l;
    file.m = m;
    file.strategy = args.strategy;
    file.f_name = args.f_name;
    file.shares = std::get<std::vector<vss::ExtendedShare>>(std::move(outcome));
    write_file(args.out, vss::serialize_share_file(file));
    return kExitPass;
}

struct LoadedFile {
    vss::ShareFile file;
    vss::SchemeInstance scheme;
    vss::VerificationStructure structure;
    vss::ControlFunction f;
};

LoadedFile load_share_file(const std::string& path) {
    vss::ShareFile file = vss::parse_share_file(read_file(path));
    vss::SchemeInstance scheme = vss::scheme_of(file);
    vss::VerificationStructure structure = vss::structure_of(file);
    std::string dir = std::filesystem::path(path).parent_path().string();
    vss::ControlFunction f = resolve_control(file.f_name, file.l, file.m, dir);
    return {std::move(file), std::move(scheme), std::move(structure), std::move(f)};
}

vss::AuthorizedSet parse_auth(const std::string& auth_text) {
    return vss::AuthorizedSet(parse_int_list(auth_text, "participant id"));
}

int run_verify(const std::string& shares_path, const std::string& auth_text) {
    LoadedFile loaded = load_share_file(shares_path);
    vss::AuthorizedSet auth = parse_auth(auth_text);
    std::cout << "f=" << loaded.file.f_name << " digest=" << vss::control_digest_hex(loaded.f)
              << "\n";
    vss::ProtocolReport report =
        vss::run_protocol(auth, loaded.structure, loaded.file.shares, loaded.f,
                          vss::Combiner::xor_fold(), vss::Combiner::xor_fold());
    std::cout << vss::render_report(report);
    return report.all_pass ? kExitPass : kExitVerifyFail;
}

int run_recover(const std::string& shares_path, const std::string& auth_text, bool skip_verify) {
    LoadedFile loaded = load_share_file(shares_path);
    vss::AuthorizedSet auth = parse_auth(auth_text);
    vss::RecoverOutcome outcome = vss::recover_secret(
        auth, loaded.file.shares, loaded.scheme, !skip_verify, loaded.structure, loaded.f,
        vss::Combiner::xor_fold(), vss::Combiner::xor_fold());
    if (const auto* failed = std::get_if<vss::VerificationFailed>(&outcome)) {
        std::cout << vss::render_report(failed->report);
        std::cerr << "verification failed; secret not recovered\n";
        return kExitVerifyFail;
    }
    const vss::BitVector& bits = std::get<vss::RecoverSuccess>(outcome).secret_bits;
    std::cout << "secret=" << vss::from_bits(bits) << " bits=" << bits.str() << "\n";
    return kExitPass;
}

struct TamperArgs {
    std::string shares_path;
    int victim = 0;
    std::string mode;
    int bit = -1;
    std::uint64_t seed = 0;
    std::string out;
};

int run_tamper(const TamperArgs& args) {
    vss::ShareFile file = vss::parse_share_file(read_file(args.shares_path));
    if (args.victim < 1 || args.victim > file.n) throw UsageError("bad victim id");
    vss::ExtendedShare& share = file.shares[static_cast<std::size_t>(args.victim - 1)];
    vss::BitVector payload = share.payload();
    vss::RandomSource rng(args.seed);
    if (args.mode == "flip-bit") {
        std::size_t index;
        if (args.bit >= 0) {
            if (args.bit >= file.l + file.m) throw UsageError("bit index past payload width");
            index = static_cast<std::size_t>(args.bit);
        } else {
            index = rng.below(payload.width());
        }
        payload.flip_bit(index);
    } else {
        vss::BitVector replacement = payload;
        while (replacement == payload) replacement = rng.bits(payload.width());
        payload = replacement;
    }
    auto [s, c] = vss::split_extended(payload, file.l, file.m);
    share.secret_part = std::move(s);
    share.control_part = std::move(c);
    write_file(args.out, vss::serialize_share_file(file));
    return kExitPass;
}

struct EstimateArgs {
    std::uint64_t p = 31;
    int t = 3;
    int n = 4;
    int v = 2;
    std::string f_name = "hash";
    std::string m_list = "1";
    int trials = 0;
    std::uint64_t seed = 0;
};

int run_estimate(const EstimateArgs& args) {
    if (args.trials < 1) throw UsageError("need --trials >= 1");
    vss::ShamirInstance inst(static_cast<std::uint32_t>(args.p), args.t, args.n);
    vss::VerificationStructure structure = vss::build_vtn_structure(args.v, args.t, args.n);
    std::vector<int> m_values = parse_int_list(args.m_list, "m");

    auto config_for_m = [&](int m) {
        vss::TrialConfig cfg{inst,
                             structure,
                             resolve_control(args.f_name, inst.l, m, ""),
                             vss::Combiner::xor_fold(),
                             vss::Combiner::xor_fold(),
                             vss::DealingStrategy::constrained,
                             std::nullopt};
        return cfg;
    };
    vss::TamperModel model{vss::TamperKind::replace_random_share, vss::TamperTarget::either, {1}};
    std::vector<vss::DetectionEstimate> estimates =
        vss::sweep_m(config_for_m, m_values, model, args.trials, args.seed);
    std::cout << vss::render_estimate_table(estimates);
    return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"verifiable secret sharing with extended shares"};
    app.require_subcommand(1);

    DealArgs deal_args;
    CLI::App* deal = app.add_subcommand("deal", "deal extended shares into a share file");
    deal->add_option("--scheme", deal_args.scheme, "secret sharing scheme")
        ->required()
        ->check(CLI::IsMember({"shamir", "kgh"}));
    deal->add_option("--p", deal_args.p, "prime modulus (shamir)");
    deal->add_option("--t", deal_args.t, "threshold");
    deal->add_option("--n", deal_args.n, "participant count")->required();
    deal->add_option("--v", deal_args.v, "verification set size")->required();
    deal->add_option("--l", deal_args.l, "secret width in bits (kgh)");
    deal->add_option("--m", deal_args.m, "control width in bits");
    deal->add_option("--secret", deal_args.secret, "secret value (or give it on standard input)");
    deal->add_option("--f", deal_args.f_name, "control function: example_table, parity, verhoeff, hash, or table file(s)")
        ->required();
    deal->add_option("--strategy", deal_args.strategy, "control assignment strategy")
        ->check(CLI::IsMember({"direct", "constrained"}));
    deal->add_option("--seed", deal_args.seed, "randomness seed");
    deal->add_option("--coeffs", deal_args.coeffs, "explicit polynomial coefficients (shamir)");
    deal->add_option("--out", deal_args.out, "output share file")->required();

    std::string verify_shares, verify_auth;
    CLI::App* verify = app.add_subcommand("verify", "run the verification protocol");
    verify->add_option("--shares", verify_shares, "share file")->required();
    verify->add_option("--auth", verify_auth, "authorized set, comma-separated ids")->required();

    std::string recover_shares, recover_auth;
    bool skip_verify = false;
    CLI::App* recover = app.add_subcommand("recover", "verify and recover the secret");
    recover->add_option("--shares", recover_shares, "share file")->required();
    recover->add_option("--auth", recover_auth, "authorized set, comma-separated ids")->required();
    recover->add_flag("--skip-verify", skip_verify, "recover without running verification");

    TamperArgs tamper_args;
    CLI::App* tamper = app.add_subcommand("tamper", "mutate one share payload");
    tamper->add_option("--shares", tamper_args.shares_path, "share file")->required();
    tamper->add_option("--victim", tamper_args.victim, "participant id to mutate")->required();
    tamper->add_option("--mode", tamper_args.mode, "mutation mode")
        ->required()
        ->check(CLI::IsMember({"flip-bit", "replace"}));
    tamper->add_option("--bit", tamper_args.bit, "payload bit to flip, 0-based from MSB");
    tamper->add_option("--seed", tamper_args.seed, "randomness seed");
    tamper->add_option("--out", tamper_args.out, "output share file")->required();

    EstimateArgs estimate_args;
    CLI::App* estimate = app.add_subcommand("estimate", "Monte-Carlo tamper detection rates");
    estimate->add_option("--p", estimate_args.p, "prime modulus");
    estimate->add_option("--t", estimate_args.t, "threshold");
    estimate->add_option("--n", estimate_args.n, "participant count");
    estimate->add_option("--v", estimate_args.v, "verification set size");
    estimate->add_option("--f", estimate_args.f_name, "control function name");
    estimate->add_option("--m-list", estimate_args.m_list, "control widths, comma-separated");
    estimate->add_option("--trials", estimate_args.trials, "trials per width")->required();
    estimate->add_option("--seed", estimate_args.seed, "randomness seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitPass : kExitUsage;
    }

    try {
        if (*deal) return run_deal(deal_args);
        if (*verify) return run_verify(verify_shares, verify_auth);
        if (*recover) return run_recover(recover_shares, recover_auth, skip_verify);
        if (*tamper) return run_tamper(tamper_args);
        if (*estimate) return run_estimate(estimate_args);
    } catch (const vss::InsufficientSharesError& e) {
        std::cerr << e.what() << "\n";
        return kExitInsufficient;
    } catch (const vss::FormatError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const UsageError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const std::overflow_error& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
