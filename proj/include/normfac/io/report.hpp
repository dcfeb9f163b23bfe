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

// Line-oriented report format shared by every CLI command.
//
// One record per line: a keyword followed by fields. Lines starting with '#'
// are comments. In `text` format fields are separated by a single space and
// values smaller than the structural tolerance print as 0; in `tsv` format
// fields are separated by tabs and every value is printed in full. Real
// numbers use the shortest digits that read back exactly; complex numbers are
// written as two fields "re im".
//
// Matrices:
//
//   matrix NAME ROWS COLS
//   row NAME I re im re im ...          (one line per row)
//
// Factorizations:
//
//   factorization NAME SIZE K
//   class NAME normal N hermitian H unitary U symmetric_unitary S idempotent I
//   factor NAME J eigenvalue RE IM modulus M argument A rank R
//   matrix NAME.E.J ...                 (projector of factor J)
//   residual NAME rank R
//   matrix NAME.F ...                   (eigenvalue-1 projector)

#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "normfac/factorization.hpp"
#include "normfac/io/matrix_file.hpp"

namespace normfac::io {

enum class ReportFormat { Text, Tsv };

class ReportWriter {
  public:
    ReportWriter(std::ostream &out, ReportFormat format, double zero_below)
        : out_(out), format_(format), zero_below_(zero_below) {}

    ReportFormat format() const noexcept { return format_; }

    void comment(std::string_view text) { out_ << "# " << text << '\n'; }

    void record(std::string_view key, const std::vector<std::string> &fields) {
        out_ << key;
        for (const auto &f : fields) {
            out_ << separator() << f;
        }
        out_ << '\n';
    }

    std::string num(double x) const {
        if (format_ == ReportFormat::Text && std::abs(x) < zero_below_) {
            return "0";
        }
        return format_double(x);
    }

    std::string integer(std::size_t x) const { return std::to_string(x); }

    void matrix(const std::string &name, const ComplexMatrix &m) {
        record("matrix", {name, integer(m.rows()), integer(m.cols())});
        for (std::size_t i = 0; i < m.rows(); ++i) {
            std::vector<std::string> fields{name, integer(i)};
            for (std::size_t j = 0; j < m.cols(); ++j) {
                fields.push_back(num(m(i, j).real()));
                fields.push_back(num(m(i, j).imag()));
            }
            record("row", fields);
        }
    }

    void structure(const std::string &name, const StructureReport &s) {
        auto flag = [](bool b) { return std::string(b ? "1" : "0"); };
        record("class", {name, "normal", flag(s.normal), "hermitian", flag(s.hermitian), "unitary",
                         flag(s.unitary), "symmetric_unitary", flag(s.symmetric_unitary),
                         "idempotent", flag(s.idempotent)});
    }

    void factorization(const std::string &name, const CanonicalFactorization &f,
                       const Tolerances &tol) {
        record("factorization", {name, integer(f.size), integer(f.factors.size())});
        structure(name, f.class_hint);
        for (std::size_t j = 0; j < f.factors.size(); ++j) {
            const auto &factor = f.factors[j];
            record("factor", {name, integer(j), "eigenvalue", num(factor.eigenvalue.real()),
                              num(factor.eigenvalue.imag()), "modulus",
                              num(std::abs(factor.eigenvalue)), "argument",
                              num(principal_argument(factor.eigenvalue, tol)), "rank",
                              integer(factor.idempotent.rank())});
            matrix(name + ".E." + std::to_string(j), factor.idempotent.matrix());
        }
        record("residual", {name, "rank", integer(f.residual.rank())});
        matrix(name + ".F", f.residual.matrix());
    }

  private:
    char separator() const { return format_ == ReportFormat::Tsv ? '\t' : ' '; }

    std::ostream &out_;
    ReportFormat format_;
    double zero_below_;
};

using Record = std::vector<std::string>;

/// A parsed report: matrices by name plus every other record in file order.
class Report {
  public:
    static Report parse(std::string_view text) {
        Report r;
        std::size_t line_no = 0;
        std::istringstream in{std::string(text)};
        std::string line;
        std::map<std::string, std::size_t> pending_rows;
        while (std::getline(in, line)) {
            ++line_no;
            if (line.empty() || line.front() == '#') {
                continue;
            }
            Record rec;
            std::istringstream fields(line);
            std::string f;
            while (fields >> f) {
                rec.push_back(f);
            }
            if (rec.empty()) {
                continue;
            }
            if (rec[0] == "matrix") {
                if (rec.size() != 4) {
                    fail(line_no, "matrix record needs NAME ROWS COLS");
                }
                const auto rows = to_size(rec[2], line_no);
                const auto cols = to_size(rec[3], line_no);
                r.matrices_[rec[1]] = ComplexMatrix(rows, cols);
                pending_rows[rec[1]] = rows;
            } else if (rec[0] == "row") {
                if (rec.size() < 3 || !r.matrices_.count(rec[1])) {
                    fail(line_no, "row for an undeclared matrix");
                }
                auto &m = r.matrices_[rec[1]];
                const auto i = to_size(rec[2], line_no);
                if (i >= m.rows() || rec.size() != 3 + 2 * m.cols()) {
                    fail(line_no, "row does not fit matrix " + rec[1]);
                }
                for (std::size_t j = 0; j < m.cols(); ++j) {
                    m(i, j) = Complex(to_real(rec[3 + 2 * j], line_no),
                                      to_real(rec[4 + 2 * j], line_no));
                }
                --pending_rows[rec[1]];
            } else {
                r.records_.push_back(std::move(rec));
            }
        }
        for (const auto &[name, missing] : pending_rows) {
            if (missing != 0) {
                throw Error(ErrorCode::BadReport, "matrix " + name + " is missing rows");
            }
        }
        return r;
    }

    const std::vector<Record> &records() const noexcept { return records_; }

    /// First record with this keyword (and, if given, this first field).
    const Record *find(std::string_view key, std::optional<std::string_view> name = {}) const {
        for (const auto &rec : records_) {
            if (rec[0] == key && (!name || (rec.size() > 1 && rec[1] == *name))) {
                return &rec;
            }
        }
        return nullptr;
    }

    const Record &require(std::string_view key, std::optional<std::string_view> name = {}) const {
        const auto *rec = find(key, name);
        if (rec == nullptr) {
            throw Error(ErrorCode::BadReport, "missing '" + std::string(key) + "' record" +
                                                  (name ? " for " + std::string(*name) : ""));
        }
        return *rec;
    }

    std::vector<const Record *> all(std::string_view key) const {
        std::vector<const Record *> out;
        for (const auto &rec : records_) {
            if (rec[0] == key) {
                out.push_back(&rec);
            }
        }
        return out;
    }

    bool has_matrix(const std::string &name) const { return matrices_.count(name) != 0; }

    const ComplexMatrix &matrix(const std::string &name) const {
        const auto it = matrices_.find(name);
        if (it == matrices_.end()) {
            throw Error(ErrorCode::BadReport, "missing matrix " + name);
        }
        return it->second;
    }

    /// Rebuilds a factorization exactly as written. Projectors are re-validated,
    /// so an invalid report raises the corresponding normfac::Error.
    CanonicalFactorization factorization(const std::string &name, const Tolerances &tol) const {
        const auto &head = require("factorization", name);
        if (head.size() != 4) {
            throw Error(ErrorCode::BadReport, "factorization record needs NAME SIZE K");
        }
        CanonicalFactorization f;
        f.size = to_size(head[2], 0);
        const auto k = to_size(head[3], 0);
        f.class_hint = structure(name);
        std::vector<const Record *> factor_records(k, nullptr);
        for (const auto *rec : all("factor")) {
            if (rec->size() != 12 || (*rec)[1] != name) {
                continue;
            }
            const auto j = to_size((*rec)[2], 0);
            if (j >= k) {
                throw Error(ErrorCode::BadReport, "factor index out of range");
            }
            factor_records[j] = rec;
        }
        for (std::size_t j = 0; j < k; ++j) {
            if (factor_records[j] == nullptr) {
                throw Error(ErrorCode::BadReport, "missing factor " + std::to_string(j));
            }
            const auto &rec = *factor_records[j];
            const Complex alpha(to_real(rec[4], 0), to_real(rec[5], 0));
            f.factors.push_back(
                {SymmetricIdempotent(matrix(name + ".E." + std::to_string(j)), tol), alpha});
        }
        f.residual = SymmetricIdempotent(matrix(name + ".F"), tol);
        return f;
    }

    StructureReport structure(const std::string &name) const {
        const auto &rec = require("class", name);
        if (rec.size() != 12) {
            throw Error(ErrorCode::BadReport, "class record needs five flags");
        }
        StructureReport s;
        s.normal = rec[3] == "1";
        s.hermitian = rec[5] == "1";
        s.unitary = rec[7] == "1";
        s.symmetric_unitary = rec[9] == "1";
        s.idempotent = rec[11] == "1";
        return s;
    }

    static double to_real(const std::string &s, std::size_t line_no) {
        const auto v = detail::to_double(s);
        if (!v || detail::scan_float(s) != s.size()) {
            fail(line_no, "'" + s + "' is not a number");
        }
        return *v;
    }

    static std::size_t to_size(const std::string &s, std::size_t line_no) {
        std::size_t v = 0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size()) {
            fail(line_no, "'" + s + "' is not a count");
        }
        return v;
    }

  private:
    [[noreturn]] static void fail(std::size_t line_no, const std::string &what) {
        throw Error(ErrorCode::BadReport,
                    (line_no ? "line " + std::to_string(line_no) + ": " : std::string()) + what);
    }

    std::map<std::string, ComplexMatrix> matrices_;
    std::vector<Record> records_;
};

} // namespace normfac::io
