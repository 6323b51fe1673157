// oporder: command-line front end for the matrix order toolkit.
//
// Exit codes: 0 = order holds / success, 1 = order does not hold / generation rejected, 2 = error.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "oporder/oporder.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace oporder;

namespace {

constexpr int kHolds = 0;
constexpr int kFails = 1;
constexpr int kError = 2;

struct RunConfig {
    Tolerance tol;
    PlusSearchConfig cfg;
    std::uint64_t seed = 0;
    std::string format = "text";

    bool json_mode() const { return format == "json"; }
};

std::string fmt_residual(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3e", v);
    return buf;
}

OrderKind kind_or_throw(const std::string& name) {
    if (auto k = parse_order_kind(name)) return *k;
    throw Error("unknown order kind: " + name);
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw Error("cannot write " + out_path);
    out << text;
}

json witnesses_json(const Witnesses& w) {
    json j;
    j["q_tilde"] = matrix_to_json(w.q_tilde);
    j["q"] = matrix_to_json(w.q);
    j["x"] = matrix_to_json(w.x);
    j["y"] = matrix_to_json(w.y);
    j["inner_inverse"] = w.inner_inverse ? matrix_to_json(*w.inner_inverse) : json(nullptr);
    return j;
}

json report_json(const OrderReport& rep) {
    json j;
    j["kind"] = std::string(to_string(rep.kind));
    j["holds"] = rep.holds;
    j["search_exhausted"] = rep.search_exhausted;
    j["routes_agree"] = rep.routes_agree();
    j["routes"] = json::array();
    for (const Route& r : rep.routes) {
        j["routes"].push_back({{"name", r.name}, {"verdict", r.verdict}, {"residual", r.residual}});
    }
    j["witnesses"] = rep.witnesses ? witnesses_json(*rep.witnesses) : json(nullptr);
    return j;
}

// ---- check ------------------------------------------------------------------

struct CheckArgs {
    std::string kind, file_a, file_b;
    bool routes = false;
    bool witness = false;
};

int cmd_check(const CheckArgs& args, const RunConfig& rc) {
    const OrderKind kind = kind_or_throw(args.kind);
    const Matrix a = read_matrix_file(args.file_a);
    const Matrix b = read_matrix_file(args.file_b);
    require_same_shape(a, b, "check");

    OrderReport rep = check(kind, a, b, rc.tol, rc.cfg);
    if (args.routes || rc.json_mode()) {
        std::optional<OrderReport> all;
        if (kind == OrderKind::star) all = star_routes(a, b, rc.tol);
        if (kind == OrderKind::minus) all = minus_routes(a, b, rc.tol);
        if (kind == OrderKind::diamond) all = diamond_routes(a, b, rc.tol);
        if (all) {
            if (!all->witnesses) all->witnesses = rep.witnesses;
            rep = *all;
        }
    }

    if (rc.json_mode()) {
        std::cout << report_json(rep).dump(2) << "\n";
    } else {
        std::cout << to_string(kind) << ": " << (rep.holds ? "holds" : "does not hold");
        if (rep.search_exhausted) std::cout << " (witness search exhausted)";
        std::cout << "\n";
        if (args.routes) {
            for (const Route& r : rep.routes) {
                std::cout << "  route " << r.name << ": " << (r.verdict ? "holds" : "fails")
                          << "  residual " << fmt_residual(r.residual) << "\n";
            }
            if (!rep.routes_agree()) std::cout << "  warning: routes disagree\n";
        }
        if (args.witness) {
            if (!rep.witnesses) {
                std::cout << "no witness available\n";
            } else {
                const Witnesses& w = *rep.witnesses;
                std::cout << "q_tilde:\n" << serialize_matrix(w.q_tilde) << "q:\n" << serialize_matrix(w.q)
                          << "x:\n" << serialize_matrix(w.x) << "y:\n" << serialize_matrix(w.y);
                if (w.inner_inverse) std::cout << "inner_inverse:\n" << serialize_matrix(*w.inner_inverse);
            }
        }
    }
    return rep.holds ? kHolds : kFails;
}

// ---- generate ---------------------------------------------------------------

struct GenerateArgs {
    std::string kind, file_a, params_dir, output;
    long long b22_rank = 1;
    double scale = 1.0;
};

std::optional<Matrix> param_file(const std::string& dir, const char* name) {
    if (dir.empty()) return std::nullopt;
    const fs::path p = fs::path(dir) / (std::string(name) + ".json");
    if (!fs::exists(p)) return std::nullopt;
    return read_matrix_file(p.string());
}

Matrix param_or_zero(const std::string& dir, const char* name, Index rows, Index cols) {
    if (auto m = param_file(dir, name)) return *m;
    return Matrix::Zero(rows, cols);
}

Matrix generate_psd_diamond(const Matrix& a, const GenerateArgs& args, const RunConfig& rc) {
    const PsdMatrix a_psd(a, rc.tol);
    const Frame f = hermitian_frame_of(a_psd.matrix(), rc.tol);
    const Index r = f.rank();
    const Index p = f.null_space.cols();
    Matrix y;
    Matrix b22;
    if (!args.params_dir.empty()) {
        y = param_or_zero(args.params_dir, "y", p, r);
        b22 = param_or_zero(args.params_dir, "b22", p, p);
    } else {
        Rng rng(rc.seed);
        y = rng.gaussian(p, r, args.scale);
        b22 = p == 0 ? Matrix(0, 0)
                     : rng.psd(p, std::clamp<Index>(static_cast<Index>(args.b22_rank), 0, p), args.scale);
    }
    return gen_diamond_psd(a_psd.matrix(), y, PsdMatrix(b22, rc.tol), rc.tol).b;
}

std::optional<Matrix> generate_from_params(OrderKind kind, const Matrix& a, const std::string& dir,
                                           const RunConfig& rc) {
    const Frame f = frame_of(a, rc.tol);
    const Index r = f.rank();
    // dimensions of N(A) and N(A*); the diamond generator works in the frame of A^†
    Index p = f.null_space.cols();
    Index q = f.left_null_space.cols();
    if (kind == OrderKind::diamond) std::swap(p, q);
    const Matrix x = param_or_zero(dir, "x", p, r);
    const Matrix y = param_or_zero(dir, "y", r, q);
    const Matrix b22 = param_or_zero(dir, "b22", q, p);
    switch (kind) {
        case OrderKind::left_star: return gen_left_star(a, x, b22, rc.tol);
        case OrderKind::right_star: return gen_right_star(a, y, b22, rc.tol);
        case OrderKind::star: return gen_star(a, b22, rc.tol);
        case OrderKind::minus: return gen_minus(a, x, y, b22, rc.tol);
        case OrderKind::diamond: return gen_diamond(a, x, y, b22, rc.tol);
        case OrderKind::plus:
            return gen_plus(a, x, y, param_or_zero(dir, "w", q, r), param_or_zero(dir, "z", r, p), b22, rc.tol);
        default: throw Error("--params is not supported for the " + std::string(to_string(kind)) + " order");
    }
}

int cmd_generate(const GenerateArgs& args, const RunConfig& rc) {
    const Matrix a = read_matrix_file(args.file_a);
    require_finite(a, "A");
    if (args.b22_rank < 0) throw InvalidTolerance("--b22-rank must be nonnegative");

    Matrix b;
    OrderKind verify_kind;
    if (args.kind == "diamond-psd") {
        b = generate_psd_diamond(a, args, rc);
        verify_kind = OrderKind::diamond;
    } else {
        verify_kind = kind_or_throw(args.kind);
        std::optional<Matrix> out;
        if (!args.params_dir.empty()) {
            if (!fs::is_directory(args.params_dir)) throw ParseError("--params must name a directory: " + args.params_dir);
            out = generate_from_params(verify_kind, a, args.params_dir, rc);
        } else {
            GenSpec spec;
            spec.kind = verify_kind;
            spec.seed = rc.seed;
            spec.b22_rank = static_cast<Index>(args.b22_rank);
            spec.scale = args.scale;
            out = generate(a, spec, rc.tol);
        }
        if (!out) {
            std::cerr << "generate: parameters violate the " << to_string(verify_kind) << " constraints\n";
            return kFails;
        }
        b = *out;
    }

    const OrderReport rep = check(verify_kind, a, b, rc.tol, rc.cfg);
    if (!rep.holds) {
        std::cerr << "generate: self-check failed, A is not below the generated B in the " << to_string(verify_kind)
                  << " order\n";
        return kFails;
    }
    emit(serialize_matrix(b), args.output);
    return kHolds;
}

// ---- shorted / geomean / riccati / polar ------------------------------------

int cmd_shorted(const std::string& fa, const std::string& fs_, const std::string& ft, const std::string& output,
                const RunConfig& rc) {
    const Matrix a = read_matrix_file(fa);
    const SubspacePair pair{read_matrix_file(fs_), read_matrix_file(ft)};
    const ShortedResult res = shorted_operator(a, pair, rc.tol);
    if (rc.json_mode()) {
        json j{{"complementable", res.complementable},
               {"weakly_complementable", res.weakly_complementable},
               {"formula_gap", res.formula_gap},
               {"shorted", matrix_to_json(res.shorted)}};
        emit(j.dump(2) + "\n", output);
    } else {
        std::cerr << "complementable: " << (res.complementable ? "yes" : "no")
                  << ", weakly complementable: " << (res.weakly_complementable ? "yes" : "no") << "\n";
        emit(serialize_matrix(res.shorted), output);
    }
    return kHolds;
}

int cmd_geomean(const std::string& fb, const std::string& fc, const std::string& output, const RunConfig& rc) {
    const PsdMatrix b(read_matrix_file(fb), rc.tol);
    const PsdMatrix c(read_matrix_file(fc), rc.tol);
    const MeanResult res = geometric_mean(b, c, rc.tol);
    if (rc.json_mode()) {
        emit(json{{"regularized", res.regularized}, {"value", matrix_to_json(res.value)}}.dump(2) + "\n", output);
    } else {
        if (res.regularized) std::cerr << "note: singular arguments, result is regularized\n";
        emit(serialize_matrix(res.value), output);
    }
    return kHolds;
}

int cmd_riccati(const std::string& fb, const std::string& ft, const std::string& fc, const std::string& output,
                const RunConfig& rc) {
    const PsdMatrix b(read_matrix_file(fb), rc.tol);
    const Matrix t = read_matrix_file(ft);
    const PsdMatrix c(read_matrix_file(fc), rc.tol);
    const RiccatiResult res = riccati_solve(b, t, c, rc.tol);
    if (rc.json_mode()) {
        emit(json{{"residual", res.residual}, {"x", matrix_to_json(res.x)}}.dump(2) + "\n", output);
    } else {
        std::cerr << "residual: " << fmt_residual(res.residual) << "\n";
        emit(serialize_matrix(res.x), output);
    }
    return kHolds;
}

int cmd_polar(const std::string& ft, const RunConfig& rc) {
    const Matrix t = read_matrix_file(ft);
    require_finite(t, "T");
    const PolarParts parts = polar(t, rc.tol);
    if (rc.json_mode()) {
        json j{{"modulus_star", matrix_to_json(parts.modulus_star)},
               {"isometry", matrix_to_json(parts.isometry)},
               {"pp_member", pp_membership(t, rc.tol)}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "modulus_star:\n" << serialize_matrix(parts.modulus_star) << "isometry:\n"
                  << serialize_matrix(parts.isometry) << "pp_member: " << (pp_membership(t, rc.tol) ? "yes" : "no")
                  << "\n";
    }
    return kHolds;
}

// ---- hasse ------------------------------------------------------------------

int cmd_hasse(const std::string& dir, const std::string& kind_name, const std::string& output, const RunConfig& rc) {
    const OrderKind kind = kind_or_throw(kind_name);
    if (!fs::is_directory(dir)) throw ParseError("not a directory: " + dir);
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) throw ParseError("no .json matrix files in " + dir);
    std::vector<std::pair<std::string, Matrix>> items;
    for (const fs::path& p : files) items.emplace_back(p.stem().string(), read_matrix_file(p.string()));
    emit(to_dot(build_hasse(items, kind, rc.tol, rc.cfg)), output);
    return kHolds;
}

// ---- verify -----------------------------------------------------------------

std::pair<std::uint64_t, std::uint64_t> parse_seed_range(const std::string& text) {
    const auto dots = text.find("..");
    try {
        if (dots == std::string::npos) {
            const auto s = std::stoull(text);
            return {s, s};
        }
        return {std::stoull(text.substr(0, dots)), std::stoull(text.substr(dots + 2))};
    } catch (const std::exception&) {
        throw ParseError("--seeds expects a..b, got '" + text + "'");
    }
}

int cmd_verify(const std::string& suite, const std::string& seeds, const RunConfig& rc) {
    VerifyOptions o;
    std::tie(o.seed_begin, o.seed_end) = parse_seed_range(seeds);
    o.tol = rc.tol;
    o.cfg = rc.cfg;
    const std::vector<SuiteResult> results = run_suites(suite, o);
    bool all_ok = true;
    if (rc.json_mode()) {
        json j = json::array();
        for (const SuiteResult& r : results) {
            j.push_back({{"suite", r.name},
                         {"cases", r.cases},
                         {"failures", r.failures},
                         {"seconds", r.seconds},
                         {"passed", r.passed()},
                         {"messages", r.messages}});
            all_ok = all_ok && r.passed();
        }
        std::cout << j.dump(2) << "\n";
    } else {
        std::printf("%-12s %8s %9s %9s  %s\n", "suite", "cases", "failures", "seconds", "result");
        for (const SuiteResult& r : results) {
            std::printf("%-12s %8zu %9zu %9.2f  %s\n", r.name.c_str(), r.cases, r.failures, r.seconds,
                        r.passed() ? "PASS" : "FAIL");
            for (const std::string& m : r.messages) std::printf("    %s\n", m.c_str());
            all_ok = all_ok && r.passed();
        }
    }
    return all_ok ? kHolds : kFails;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Star, minus, diamond and plus orders between complex matrices"};
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig rc;
    app.add_option("--tol-abs", rc.tol.eq_abs, "absolute equality tolerance")->capture_default_str();
    app.add_option("--tol-rel", rc.tol.eq_rel, "relative equality tolerance")->capture_default_str();
    app.add_option("--rank-rel", rc.tol.rank_rel, "relative singular-value cutoff for ranks")->capture_default_str();
    app.add_option("--restarts", rc.cfg.restarts, "random restarts in the plus witness search")->capture_default_str();
    app.add_option("--seed", rc.seed, "random seed (default: $OPORDER_SEED or 0)")->envname("OPORDER_SEED");
    app.add_option("--format", rc.format, "output format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();

    CheckArgs check_args;
    auto* check_cmd = app.add_subcommand("check", "decide A <= B in an order; exit 0 holds, 1 not");
    check_cmd->add_option("kind", check_args.kind, "order kind")->required();
    check_cmd->add_option("A", check_args.file_a, "matrix file")->required();
    check_cmd->add_option("B", check_args.file_b, "matrix file")->required();
    check_cmd->add_flag("--routes", check_args.routes, "print every characterization route");
    check_cmd->add_flag("--witness", check_args.witness, "print projections, parameters and inner inverse");

    GenerateArgs gen_args;
    auto* gen_cmd = app.add_subcommand("generate", "construct B above A in an order");
    gen_cmd->add_option("kind", gen_args.kind, "left_star|right_star|star|minus|diamond|plus|diamond-psd")->required();
    gen_cmd->add_option("A", gen_args.file_a, "matrix file")->required();
    gen_cmd->add_option("--b22-rank", gen_args.b22_rank, "rank of the random b22 block")->capture_default_str();
    gen_cmd->add_option("--scale", gen_args.scale, "scale of the random parameters")->capture_default_str();
    gen_cmd->add_option("--params", gen_args.params_dir, "directory with x/y/w/z/b22 .json files (missing ones are zero)");
    gen_cmd->add_option("-o,--output", gen_args.output, "output file (default stdout)");

    std::string f1, f2, f3, output, name, seeds = "0..99";
    auto* shorted_cmd = app.add_subcommand("shorted", "shorted operator of A to (S, T); bases are matrix columns");
    shorted_cmd->add_option("A", f1)->required();
    shorted_cmd->add_option("S", f2, "orthonormal basis of S")->required();
    shorted_cmd->add_option("T", f3, "orthonormal basis of T")->required();
    shorted_cmd->add_option("-o,--output", output);

    auto* mean_cmd = app.add_subcommand("geomean", "geometric mean B # C of PSD matrices");
    mean_cmd->add_option("B", f1)->required();
    mean_cmd->add_option("C", f2)->required();
    mean_cmd->add_option("-o,--output", output);

    auto* ric_cmd = app.add_subcommand("riccati", "solve X B^-1 X - T* X - X T = C");
    ric_cmd->add_option("B", f1)->required();
    ric_cmd->add_option("T", f2)->required();
    ric_cmd->add_option("C", f3)->required();
    ric_cmd->add_option("-o,--output", output);

    auto* polar_cmd = app.add_subcommand("polar", "polar parts T = |T*| V_T");
    polar_cmd->add_option("T", f1)->required();

    auto* hasse_cmd = app.add_subcommand("hasse", "Hasse diagram (DOT) of the matrix files in a directory");
    hasse_cmd->add_option("dir", f1)->required();
    hasse_cmd->add_option("kind", name)->required();
    hasse_cmd->add_option("-o,--output", output);

    auto* verify_cmd = app.add_subcommand("verify", "run the randomized property suites");
    verify_cmd->add_option("suite", name, "suite name or 'all'")->required();
    verify_cmd->add_option("--seeds", seeds, "inclusive seed range a..b")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kError;
    }

    try {
        rc.tol.validate();
        rc.cfg.seed = rc.seed;
        rc.cfg.validate();
        if (check_cmd->parsed()) return cmd_check(check_args, rc);
        if (gen_cmd->parsed()) return cmd_generate(gen_args, rc);
        if (shorted_cmd->parsed()) return cmd_shorted(f1, f2, f3, output, rc);
        if (mean_cmd->parsed()) return cmd_geomean(f1, f2, output, rc);
        if (ric_cmd->parsed()) return cmd_riccati(f1, f2, f3, output, rc);
        if (polar_cmd->parsed()) return cmd_polar(f1, rc);
        if (hasse_cmd->parsed()) return cmd_hasse(f1, name, output, rc);
        if (verify_cmd->parsed()) return cmd_verify(name, seeds, rc);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kError;
    }
    return kError;
}
