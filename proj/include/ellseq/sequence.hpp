// The sequence of points nP+Q and the denominator sequence beta_n: x(nP+Q)
// written as alpha_n / beta_n in lowest terms with beta_n >= 1. Generation is
// incremental (one addition per index) and cacheable on disk.
//
// Cache file format (bit-exact decimal):
//   header:  "# ellseq-seq v1\tlabel=...\tcurve=a1,a2,a3,a4,a6\tP=...\tQ=...\tchecksum=<hex>"
//   records: "n\talpha\tbeta\tfactors"  with factors "p^e,p^e,...|cofactor" or "-"
// Loading replays the addition chain and checks every record against the
// file, so a corrupt cache is rejected rather than believed; the payload
// that actually saves time is the factors column.
#pragma once

#include <cstdio>
#include <deque>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <utility>

#include "ellseq/arith.hpp"
#include "ellseq/curve.hpp"

namespace ellseq {

struct SequenceConfig {
    Curve curve;
    Point P;          // non-torsion
    Point Q;          // may be O
    std::string label;

    std::string key() const {
        return label + "|" + to_string(curve) + "|" + to_string(P) + "|" + to_string(Q);
    }
};

struct SequenceRecord {
    long n = 0;
    Point point;     // nP + Q
    Int alpha;       // numerator of x(nP+Q)
    Int beta;        // denominator of x(nP+Q), >= 1, coprime to alpha
    std::optional<FactoredInteger> factors;  // of beta, filled lazily
};

// Contiguous run of records n = M+1 .. M+N.
class RecordView {
public:
    using iterator = std::deque<SequenceRecord>::const_iterator;
    RecordView(iterator begin, iterator end) : begin_(begin), end_(end) {}
    iterator begin() const { return begin_; }
    iterator end() const { return end_; }
    size_t size() const { return static_cast<size_t>(end_ - begin_); }
    const SequenceRecord& operator[](size_t i) const { return *(begin_ + static_cast<long>(i)); }

private:
    iterator begin_, end_;
};

class Sequence {
public:
    explicit Sequence(SequenceConfig cfg) : cfg_(std::move(cfg)) {
        require_on_curve(cfg_.curve, cfg_.P, "sequence config P");
        require_on_curve(cfg_.curve, cfg_.Q, "sequence config Q");
        if (torsion_order(cfg_.curve, cfg_.P).has_value()) throw TorsionPointError();
        last_ = cfg_.Q;  // point at n = 0
    }

    const SequenceConfig& config() const { return cfg_; }
    long computed_up_to() const { return static_cast<long>(records_.size()); }

    const SequenceRecord& term(long n) {
        if (n < 1) throw UsageError("sequence index must be >= 1");
        extend_to(n);
        return records_[static_cast<size_t>(n - 1)];
    }

    // Records for n = M+1 .. M+N. References stay valid across later
    // extensions (deque storage); the view itself is invalidated by them.
    RecordView range(long M, long N) {
        if (M < 0 || N < 1) throw UsageError("range requires M >= 0 and N >= 1");
        extend_to(M + N);
        return RecordView(records_.begin() + M, records_.begin() + M + N);
    }

    SequenceRecord& mutable_record(long n) {
        extend_to(n);
        return records_[static_cast<size_t>(n - 1)];
    }

    void save(const std::filesystem::path& dir) const {
        std::filesystem::create_directories(dir);
        std::ofstream out(dir / "sequence.tsv", std::ios::trunc);
        if (!out) throw CacheError("cannot write cache in " + dir.string());
        out << header_line() << "\n";
        for (const auto& rec : records_) {
            out << rec.n << "\t" << rec.alpha.get_str() << "\t" << rec.beta.get_str()
                << "\t" << (rec.factors ? format_factors(*rec.factors) : "-") << "\n";
        }
    }

    static Sequence load(const std::filesystem::path& dir) {
        std::ifstream in(dir / "sequence.tsv");
        if (!in) throw CacheError("no cache at " + dir.string());
        std::string header;
        std::getline(in, header);
        Sequence seq(parse_header(header));
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            auto parts = detail::split(line, '\t');
            if (parts.size() != 4) throw CacheError("malformed cache record: " + line);
            try {
                long n = parse_long(parts[0]);
                const SequenceRecord& rec = seq.term(n);
                if (rec.alpha != parse_int(parts[1]) || rec.beta != parse_int(parts[2]))
                    throw CacheError("cache mismatch at n = " + std::to_string(n));
                if (parts[3] != "-") seq.mutable_record(n).factors = parse_factors(parts[3]);
            } catch (const CacheError&) {
                throw;
            } catch (const Error&) {
                throw CacheError("malformed cache record: " + line);
            }
        }
        return seq;
    }

    std::string header_line() const {
        return "# ellseq-seq v1\tlabel=" + cfg_.label + "\tcurve=" + to_string(cfg_.curve) +
               "\tP=" + to_string(cfg_.P) + "\tQ=" + to_string(cfg_.Q) +
               "\tchecksum=" + checksum(cfg_);
    }

private:
    static std::string checksum(const SequenceConfig& cfg) {
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx",
                      static_cast<unsigned long long>(fnv1a64(cfg.key())));
        return buf;
    }

    void extend_to(long n) {
        while (static_cast<long>(records_.size()) < n) {
            long next = static_cast<long>(records_.size()) + 1;
            Point pt = detail::add_unchecked(cfg_.curve, last_, cfg_.P);
            if (pt.is_infinity()) throw HitInfinityError(next);
            const Rat& x = pt.x();
            records_.push_back(SequenceRecord{next, pt, x.get_num(), x.get_den(), std::nullopt});
            last_ = std::move(pt);
        }
    }

    static SequenceConfig parse_header(const std::string& header) {
        auto parts = detail::split(header, '\t');
        if (parts.empty() || parts[0] != "# ellseq-seq v1")
            throw CacheError("unrecognized cache header");
        std::string label, curve_s, p_s, q_s, sum_s;
        for (auto part : parts) {
            auto eq = part.find('=');
            if (eq == std::string_view::npos) continue;
            auto key = part.substr(0, eq);
            auto val = std::string(part.substr(eq + 1));
            if (key == "label") label = val;
            else if (key == "curve") curve_s = val;
            else if (key == "P") p_s = val;
            else if (key == "Q") q_s = val;
            else if (key == "checksum") sum_s = val;
        }
        if (curve_s.empty() || p_s.empty() || q_s.empty())
            throw CacheError("cache header missing fields");
        SequenceConfig cfg{parse_curve(curve_s), parse_point(p_s), parse_point(q_s), label};
        if (!sum_s.empty() && sum_s != checksum(cfg))
            throw CacheError("cache header checksum mismatch");
        return cfg;
    }

    SequenceConfig cfg_;
    std::deque<SequenceRecord> records_;
    Point last_;  // point for n = records_.size() (Q when empty)
};

// One cache directory per curve label under a root directory.
class CacheStore {
public:
    explicit CacheStore(std::filesystem::path root) : root_(std::move(root)) {}

    std::filesystem::path dir_for(const std::string& label) const { return root_ / label; }

    bool has(const std::string& label) const {
        return std::filesystem::exists(dir_for(label) / "sequence.tsv");
    }

    Sequence load(const std::string& label) const { return Sequence::load(dir_for(label)); }

    // Load when present (the header must agree with cfg), otherwise start fresh.
    Sequence open(const SequenceConfig& cfg) const {
        if (has(cfg.label)) {
            Sequence seq = load(cfg.label);
            if (seq.config().key() != cfg.key())
                throw CacheError("cache label '" + cfg.label +
                                 "' holds a different configuration");
            return seq;
        }
        return Sequence(cfg);
    }

    void save(const Sequence& seq) const { seq.save(dir_for(seq.config().label)); }

private:
    std::filesystem::path root_;
};

}  // namespace ellseq
