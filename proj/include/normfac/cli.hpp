// Copyright 2026 The normfac Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Command-line front end. Needs CLI11.hpp on the include path.
//
// Exit status: 0 on success, 1 on usage, I/O or parse failures, 2 when the
// input violates a precondition (or when `verify` sees a failing check).

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "normfac/builders.hpp"
#include "normfac/density.hpp"
#include "normfac/factorization.hpp"
#include "normfac/gates.hpp"
#include "normfac/idempotent.hpp"
#include "normfac/io/matrix_file.hpp"
#include "normfac/io/report.hpp"
#include "normfac/roots.hpp"
#include "normfac/structure.hpp"

namespace normfac::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 1;
inline constexpr int kExitInvalid = 2;

/// Bad or missing flags for a subcommand.
class UsageError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string command;
    std::string input;
    std::optional<unsigned> n;
    std::optional<unsigned> m;
    std::string gate;
    std::optional<double> theta;
    double tol_struct = 1e-10;
    double tol_cluster = 1e-7;
    std::uint64_t max_roots = kDefaultMaxRoots;
    std::string format = "text";
};

namespace detail {

inline double relative_scale(const ComplexMatrix &a) { return std::max(1.0, frobenius_norm(a)); }

inline const std::string &require_input(const Options &o) {
    if (o.input.empty()) {
        throw UsageError(o.command + " needs --input FILE");
    }
    return o.input;
}

inline void header(io::ReportWriter &w, const Options &o, const Tolerances &tol) {
    w.record("command", {o.command});
    w.record("tolerance", {io::format_double(tol.structural), io::format_double(tol.cluster)});
}

inline void factor_block(io::ReportWriter &w, const std::string &name,
                         const CanonicalFactorization &f, const ComplexMatrix &target,
                         const Tolerances &tol) {
    w.factorization(name, f, tol);
    w.record("reconstruction_residual",
             {name, io::format_double(frobenius_distance(reconstruct(f), target))});
}

inline void cmd_classify(io::ReportWriter &w, const ComplexMatrix &a, const Tolerances &tol) {
    w.matrix("input", a);
    w.structure("input", classify(a, tol));
}

inline void cmd_factor(io::ReportWriter &w, const ComplexMatrix &a, const Tolerances &tol) {
    w.matrix("input", a);
    const auto f = factor_normal(a, tol);
    factor_block(w, "A", f, a, tol);
    // Involution data is reported whenever it applies.
    try {
        const auto e = involution_idempotent(a, tol);
        w.record("involution", {"A", "rank", w.integer(e.rank())});
        w.matrix("A.involution", e.matrix());
    } catch (const Error &) {
    }
    if (f.class_hint.hermitian) {
        try {
            const auto s = scaled_involution_idempotent(a, tol);
            w.record("scaled_involution",
                     {"A", "scale", io::format_double(s.scale), "rank", w.integer(s.idempotent.rank())});
            w.matrix("A.scaled_involution", s.idempotent.matrix());
        } catch (const Error &) {
        }
    }
}

inline void cmd_pinv(io::ReportWriter &w, const ComplexMatrix &a, const Tolerances &tol) {
    w.matrix("input", a);
    const auto f = factor_normal(a, tol);
    factor_block(w, "A", f, a, tol);
    w.matrix("pinv", pseudo_inverse(f));
}

inline void cmd_power(io::ReportWriter &w, const ComplexMatrix &a, unsigned m,
                      const Tolerances &tol) {
    w.matrix("input", a);
    const auto f = factor_normal(a, tol);
    factor_block(w, "A", f, a, tol);
    w.record("power", {"m", w.integer(m)});
    const auto p = power(f, m, tol);
    w.factorization("power", p, tol);
    w.matrix("result", reconstruct(p));
}

inline void cmd_roots(io::ReportWriter &w, const ComplexMatrix &a, unsigned n,
                      std::uint64_t cap, const Tolerances &tol) {
    w.matrix("input", a);
    const auto f = factor_normal(a, tol);
    const auto roots = all_nth_roots(f, n, cap, tol);
    factor_block(w, "A", f, a, tol);
    w.record("roots", {"n", w.integer(n), "count", w.integer(roots.size())});
    for (std::size_t k = 0; k < roots.size(); ++k) {
        std::vector<std::string> fields{w.integer(k), "selector"};
        for (auto r : roots[k].selector.branch_indices) {
            fields.push_back(w.integer(r));
        }
        fields.push_back("residual");
        fields.push_back(w.integer(roots[k].selector.residual_index));
        w.record("root", fields);
        const std::string name = "root." + std::to_string(k);
        w.factorization(name, roots[k].root, tol);
        w.matrix(name + ".matrix", reconstruct(roots[k].root));
    }
}

inline void cmd_idem_decompose(io::ReportWriter &w, const ComplexMatrix &a, const Tolerances &tol) {
    w.matrix("input", a);
    const auto d = decompose_pure(SymmetricIdempotent(a, tol), tol);
    w.record("decomposition", {"parts", w.integer(d.size())});
    for (std::size_t k = 0; k < d.size(); ++k) {
        w.record("part", {w.integer(k), "st", w.integer(d.st_indices[k])});
        w.matrix("part." + std::to_string(k), d.parts[k].matrix());
    }
}

inline void cmd_density(io::ReportWriter &w, const ComplexMatrix &a, const Tolerances &tol) {
    w.matrix("input", a);
    const auto form = canonical_density(DensityMatrix(a, tol), tol);
    w.record("density", {"levels", w.integer(form.weights.size())});
    for (std::size_t j = 0; j < form.weights.size(); ++j) {
        w.record("level", {w.integer(j), "weight", io::format_double(form.weights[j]), "rank",
                           w.integer(form.projectors[j].rank())});
        const std::string name = "level." + std::to_string(j);
        w.matrix(name, form.projectors[j].matrix());
        for (std::size_t k = 0; k < form.blocks[j].size(); ++k) {
            w.record("pure", {w.integer(j), w.integer(k), "st",
                              w.integer(form.blocks[j].st_indices[k])});
            w.matrix(name + "." + std::to_string(k), form.blocks[j].parts[k].matrix());
        }
    }
    w.record("kernel", {"rank", w.integer(form.residual.rank())});
    w.matrix("kernel", form.residual.matrix());
    w.record("weight_rank_sum", {io::format_double(form.weight_rank_sum())});
}

inline void cmd_gate(io::ReportWriter &w, const Options &o, const Tolerances &tol) {
    if (o.gate.empty()) {
        throw UsageError("gate needs --gate NAME");
    }
    std::map<std::string, double> params;
    if (o.theta) {
        params["theta"] = *o.theta;
    }
    const auto g = gate(o.gate, params);
    std::vector<std::string> fields{g.name};
    for (const auto &[key, value] : g.parameters) {
        fields.push_back(key);
        fields.push_back(io::format_double(value));
    }
    w.record("gate", fields);
    w.matrix("input", g.matrix);
    const auto f = factor_normal(g.matrix, tol);
    factor_block(w, "A", f, g.matrix, tol);
    w.factorization("published", g.published_factorization, tol);
    const auto d = canonical_distance(f, g.published_factorization);
    w.record("canonical_distance", {"eigenvalue", io::format_double(d.eigenvalue), "idempotent",
                                    io::format_double(d.idempotent)});
}

/// Rows of the input are frames: column 0 holds alpha, the rest the vector.
inline Frame frame_from_matrix(const ComplexMatrix &a) {
    if (a.cols() < 2) {
        throw Error(ErrorCode::LengthMismatch, "frame file needs at least 2 columns");
    }
    Frame frame;
    frame.dim = a.cols() - 1;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        frame.alphas.push_back(a(i, 0));
        ColumnVector u(frame.dim);
        for (std::size_t j = 0; j < frame.dim; ++j) {
            u[j] = a(i, j + 1);
        }
        frame.vectors.push_back(std::move(u));
    }
    return frame;
}

inline void cmd_build_frame(io::ReportWriter &w, const ComplexMatrix &a, const Tolerances &tol) {
    w.matrix("input", a);
    const auto f = build_from_frame(frame_from_matrix(a), tol);
    const ComplexMatrix result = product_form(f);
    w.matrix("result", result);
    factor_block(w, "A", f, result, tol);
}

// ---------------------------------------------------------------- verify

class Checker {
  public:
    explicit Checker(io::ReportWriter &w) : w_(w) {}

    void check(const std::string &name, double value, double threshold) {
        const bool pass = value <= threshold;
        failed_ = failed_ || !pass;
        w_.record(pass ? "PASS" : "FAIL",
                  {name, io::format_double(value), io::format_double(threshold)});
    }

    void check_flag(const std::string &name, bool ok) { check(name, ok ? 0.0 : 1.0, 0.0); }

    bool failed() const noexcept { return failed_; }

  private:
    io::ReportWriter &w_;
    bool failed_ = false;
};

inline void verify_factorization(Checker &c, const std::string &name,
                                 const CanonicalFactorization &f, const ComplexMatrix &a,
                                 const Tolerances &tol) {
    const double scale = relative_scale(a);
    c.check(name + ".reconstruction", frobenius_distance(reconstruct(f), a), 1e-8 * scale);
    c.check(name + ".product_form", frobenius_distance(product_form(f), a), 1e-8 * scale);
    bool orthogonal = true;
    try {
        std::vector<SymmetricIdempotent> members;
        for (const auto &factor : f.factors) {
            members.push_back(factor.idempotent);
        }
        if (!f.residual.is_zero()) {
            members.push_back(f.residual);
        }
        const auto family = make_family(f.size, members, tol);
        orthogonal = family.complete;
    } catch (const Error &) {
        orthogonal = false;
    }
    c.check_flag(name + ".complete_orthogonal_family", orthogonal);
    double action = 0.0;
    for (const auto &factor : f.factors) {
        const auto &e = factor.idempotent.matrix();
        action = std::max(action, frobenius_distance(a * e, factor.eigenvalue * e));
    }
    c.check(name + ".action_law", action, 1e-8 * scale);
}

inline void verify_moore_penrose(Checker &c, const ComplexMatrix &a, const ComplexMatrix &x) {
    const double scale = relative_scale(a) * relative_scale(x);
    const ComplexMatrix ax = a * x;
    const ComplexMatrix xa = x * a;
    c.check("pinv.axa", frobenius_distance(ax * a, a), 1e-8 * scale * relative_scale(a));
    c.check("pinv.xax", frobenius_distance(xa * x, x), 1e-8 * scale * relative_scale(x));
    c.check("pinv.ax_hermitian", frobenius_distance(ax, adjoint(ax)), 1e-8 * scale);
    c.check("pinv.xa_hermitian", frobenius_distance(xa, adjoint(xa)), 1e-8 * scale);
}

inline unsigned field_count(const io::Record &rec, std::size_t index) {
    if (index >= rec.size()) {
        throw Error(ErrorCode::BadReport, "record '" + rec[0] + "' is too short");
    }
    return static_cast<unsigned>(io::Report::to_size(rec[index], 0));
}

inline bool verify_report(io::ReportWriter &w, const io::Report &r) {
    const auto &cmd_rec = r.require("command");
    const auto &tol_rec = r.require("tolerance");
    if (cmd_rec.size() != 2 || tol_rec.size() != 3) {
        throw Error(ErrorCode::BadReport, "malformed command or tolerance record");
    }
    const std::string cmd = cmd_rec[1];
    const Tolerances tol(io::Report::to_real(tol_rec[1], 0), io::Report::to_real(tol_rec[2], 0));
    const ComplexMatrix &a = r.matrix("input");
    w.record("verify", {cmd});
    Checker c(w);

    if (cmd == "classify") {
        c.check_flag("classification", classify(a, tol) == r.structure("input"));
    } else if (cmd == "factor" || cmd == "pinv" || cmd == "power" || cmd == "roots" ||
               cmd == "gate") {
        const auto f = r.factorization("A", tol);
        verify_factorization(c, "A", f, a, tol);
        c.check_flag("A.canonical", canonical_equal(f, factor_normal(a, tol), tol));
        verify_moore_penrose(c, a, pseudo_inverse(f));
        if (cmd == "factor" && r.has_matrix("A.involution")) {
            const auto &e = r.matrix("A.involution");
            c.check("involution.reconstruction",
                    frobenius_distance(ComplexMatrix::identity(a.rows()) - 2.0 * e, a),
                    1e-8 * relative_scale(a));
        }
        if (cmd == "factor" && r.has_matrix("A.scaled_involution")) {
            const auto &rec = r.require("scaled_involution", "A");
            const double scale = io::Report::to_real(rec.at(3), 0);
            const auto &e = r.matrix("A.scaled_involution");
            c.check("scaled_involution.reconstruction",
                    frobenius_distance(scale * (ComplexMatrix::identity(a.rows()) - 2.0 * e), a),
                    1e-8 * relative_scale(a));
        }
        if (cmd == "pinv") {
            verify_moore_penrose(c, a, r.matrix("pinv"));
        }
        if (cmd == "power") {
            const unsigned m = field_count(r.require("power", "m"), 2);
            const ComplexMatrix direct = matrix_power(a, m);
            c.check("power.result", frobenius_distance(r.matrix("result"), direct),
                    1e-8 * relative_scale(direct));
            const auto p = r.factorization("power", tol);
            c.check("power.reconstruction", frobenius_distance(reconstruct(p), direct),
                    1e-8 * relative_scale(direct));
        }
        if (cmd == "roots") {
            const auto &head = r.require("roots", "n");
            const unsigned n = field_count(head, 2);
            const unsigned count = field_count(head, 4);
            const auto expected = count_nth_roots(f, n);
            c.check_flag("roots.count", !expected.saturated && expected.count == count &&
                                            r.all("root").size() == count);
            double worst = 0.0;
            for (unsigned k = 0; k < count; ++k) {
                const std::string name = "root." + std::to_string(k);
                const auto root = r.factorization(name, tol);
                worst = std::max(worst, frobenius_distance(matrix_power(reconstruct(root), n), a));
                worst = std::max(worst, frobenius_distance(r.matrix(name + ".matrix"),
                                                           reconstruct(root)));
            }
            c.check("roots.power_reconstruction", worst, 1e-7 * relative_scale(a));
        }
        if (cmd == "gate") {
            const auto published = r.factorization("published", tol);
            c.check_flag("gate.published_equal", canonical_equal(f, published, tol));
            c.check("gate.published_reconstruction", frobenius_distance(reconstruct(published), a),
                    1e-8 * relative_scale(a));
        }
    } else if (cmd == "idem-decompose") {
        const unsigned k = field_count(r.require("decomposition", "parts"), 2);
        const SymmetricIdempotent e(a, tol);
        ComplexMatrix sum = ComplexMatrix::zeros(a.rows(), a.cols());
        std::vector<SymmetricIdempotent> parts;
        bool rank_one = true;
        bool st_ok = true;
        std::size_t last_st = 0;
        for (unsigned j = 0; j < k; ++j) {
            const auto &rec = r.require("part", std::to_string(j));
            const std::size_t st = field_count(rec, 3);
            parts.emplace_back(r.matrix("part." + std::to_string(j)), tol);
            rank_one = rank_one && parts.back().rank() == 1;
            st_ok = st_ok && st_index(parts.back(), tol) == st && (j == 0 || st > last_st);
            last_st = st;
            sum += parts.back().matrix();
        }
        c.check_flag("decomposition.rank_count", k == e.rank());
        c.check_flag("decomposition.rank_one_parts", rank_one);
        c.check_flag("decomposition.st_increasing", st_ok);
        c.check("decomposition.sum", frobenius_distance(sum, a), 1e-8 * relative_scale(a));
        bool orthogonal = true;
        try {
            make_family(a.rows(), parts, tol);
        } catch (const Error &) {
            orthogonal = false;
        }
        c.check_flag("decomposition.orthogonal", orthogonal);
        const auto fresh = decompose_pure(e, tol);
        double gap = fresh.size() == parts.size() ? 0.0 : 1.0;
        for (std::size_t j = 0; j < std::min(fresh.size(), parts.size()); ++j) {
            gap = std::max(gap, frobenius_distance(fresh.parts[j].matrix(), parts[j].matrix()));
        }
        c.check("decomposition.unique", gap, 10.0 * tol.structural);
    } else if (cmd == "density") {
        const unsigned levels = field_count(r.require("density", "levels"), 2);
        ComplexMatrix sum = ComplexMatrix::zeros(a.rows(), a.cols());
        double rank_sum = 0.0;
        double action = 0.0;
        for (unsigned j = 0; j < levels; ++j) {
            const auto &rec = r.require("level", std::to_string(j));
            const double p = io::Report::to_real(rec.at(3), 0);
            const SymmetricIdempotent proj(r.matrix("level." + std::to_string(j)), tol);
            sum += p * proj.matrix();
            rank_sum += p * static_cast<double>(proj.rank());
            action = std::max(action, frobenius_distance(a * proj.matrix(), p * proj.matrix()));
        }
        c.check("density.reconstruction", frobenius_distance(sum, a), 1e-8 * relative_scale(a));
        c.check("density.weight_rank_sum", std::abs(rank_sum - 1.0), 1e-8);
        c.check("density.action_law", action, 1e-8);
        const auto kernel = SymmetricIdempotent(r.matrix("kernel"), tol);
        c.check("density.kernel", frobenius_norm(a * kernel.matrix()), 1e-8);
    } else if (cmd == "build-frame") {
        const auto frame = frame_from_matrix(a);
        const auto f = r.factorization("A", tol);
        const ComplexMatrix &result = r.matrix("result");
        verify_factorization(c, "A", f, result, tol);
        double eigen = 0.0;
        for (std::size_t i = 0; i < frame.vectors.size(); ++i) {
            const auto u = ComplexMatrix::column(frame.vectors[i]);
            eigen = std::max(eigen, frobenius_distance(result * u, frame.alphas[i] * u));
        }
        c.check("frame.eigenvectors", eigen, 1e-8 * relative_scale(result));
    } else {
        throw Error(ErrorCode::BadReport, "cannot verify command '" + cmd + "'");
    }
    return !c.failed();
}

} // namespace detail

inline const std::vector<std::string> &command_names() {
    static const std::vector<std::string> names = {
        "classify", "factor", "pinv",  "power",       "roots",
        "idem-decompose", "density", "gate", "build-frame", "verify"};
    return names;
}

inline std::string command_help(const std::string &name) {
    static const std::map<std::string, std::string> help = {
        {"classify", "report structural properties of a square matrix"},
        {"factor", "canonical factorization of a normal matrix"},
        {"pinv", "Moore-Penrose pseudo-inverse of a normal matrix"},
        {"power", "m-th power through the factorization (--m)"},
        {"roots", "every n-th root of a normal matrix (--n)"},
        {"idem-decompose", "split a symmetric idempotent into st-ordered rank-1 parts"},
        {"density", "canonical form of a density matrix"},
        {"gate", "factor a catalog gate and compare with its published form (--gate)"},
        {"build-frame", "build a matrix from orthonormal vectors and eigenvalues"},
        {"verify", "re-check the invariants recorded in a report (--input REPORT)"}};
    return help.at(name);
}

/// Runs one command; `args` excludes the program name.
inline int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Canonical basic-matrix factorizations of normal matrices", "normfac"};
    app.require_subcommand(1, 1);
    app.fallthrough();
    Options o;
    app.add_option("--input", o.input, "input matrix file (or report, for verify)");
    app.add_option("--n", o.n, "root order (roots)")->check(CLI::PositiveNumber);
    app.add_option("--m", o.m, "exponent (power)")->check(CLI::PositiveNumber);
    app.add_option("--gate", o.gate, "gate name (gate)");
    app.add_option("--theta", o.theta, "gate angle in radians");
    app.add_option("--tol-struct", o.tol_struct, "structural tolerance")->capture_default_str();
    app.add_option("--tol-cluster", o.tol_cluster, "eigenvalue clustering tolerance")
        ->capture_default_str();
    app.add_option("--max-roots", o.max_roots, "refuse to enumerate more roots than this")
        ->capture_default_str();
    app.add_option("--format", o.format, "report format")
        ->check(CLI::IsMember({"text", "tsv"}))
        ->capture_default_str();
    for (const auto &name : command_names()) {
        app.add_subcommand(name, command_help(name))->callback([&o, name] { o.command = name; });
    }

    std::vector<std::string> argv_store{"normfac"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char *> argv;
    for (const auto &s : argv_store) {
        argv.push_back(s.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError &e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e, out, err);
        }
        err << "normfac: usage: " << e.what() << " (run with --help for more information)\n";
        return kExitIo;
    }

    std::ostringstream report;
    try {
        const Tolerances tol(o.tol_struct, o.tol_cluster);
        io::ReportWriter w(report, o.format == "tsv" ? io::ReportFormat::Tsv : io::ReportFormat::Text,
                           tol.structural);
        if (o.command == "verify") {
            const auto r = io::Report::parse(io::read_file(detail::require_input(o)));
            // verify uses the tolerances stored in the report itself.
            w.record("command", {o.command});
            const bool ok = detail::verify_report(w, r);
            out << report.str();
            if (!ok) {
                err << "normfac: verification failed\n";
                return kExitInvalid;
            }
            return kExitOk;
        }
        detail::header(w, o, tol);
        if (o.command == "gate") {
            detail::cmd_gate(w, o, tol);
        } else {
            const ComplexMatrix a = io::read_matrix_file(detail::require_input(o));
            if (o.command == "classify") {
                detail::cmd_classify(w, a, tol);
            } else if (o.command == "factor") {
                detail::cmd_factor(w, a, tol);
            } else if (o.command == "pinv") {
                detail::cmd_pinv(w, a, tol);
            } else if (o.command == "power") {
                if (!o.m) {
                    throw UsageError("power needs --m INT");
                }
                detail::cmd_power(w, a, *o.m, tol);
            } else if (o.command == "roots") {
                if (!o.n) {
                    throw UsageError("roots needs --n INT");
                }
                detail::cmd_roots(w, a, *o.n, o.max_roots, tol);
            } else if (o.command == "idem-decompose") {
                detail::cmd_idem_decompose(w, a, tol);
            } else if (o.command == "density") {
                detail::cmd_density(w, a, tol);
            } else if (o.command == "build-frame") {
                detail::cmd_build_frame(w, a, tol);
            }
        }
    } catch (const UsageError &e) {
        err << "normfac: usage: " << e.what() << '\n';
        return kExitIo;
    } catch (const io::IoError &e) {
        err << "normfac: " << e.what() << '\n';
        return kExitIo;
    } catch (const ParseError &e) {
        err << "normfac: " << o.input << ": " << e.what() << '\n';
        return kExitIo;
    } catch (const Error &e) {
        err << "normfac: " << e.what() << '\n';
        return is_parse_error(e.code()) ? kExitIo : kExitInvalid;
    } catch (const std::invalid_argument &e) {
        err << "normfac: " << e.what() << '\n';
        return kExitInvalid;
    }
    out << report.str();
    return kExitOk;
}

} // namespace normfac::cli
