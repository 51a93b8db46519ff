#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

#include "tightpoly/escalation.hpp"

namespace tightpoly {

/// Append-only truant cache, one file per (m, n, bound).
///
/// File layout: a header line "# tightpoly truants v1 m=<m> n=<n> bound=<B>"
/// followed by one record per line, "<a_1>,<a_2>,...,<a_k> <truant|inf>".
/// Lines that do not parse (for example a record cut short by an interrupted
/// run) are skipped and counted.
class FileTruantCache : public TruantStore {
public:
    FileTruantCache(const std::filesystem::path& dir, integer m, integer n, integer bound)
        : path_(dir / file_name(m, n, bound)), header_(header_line(m, n, bound)) {
        std::filesystem::create_directories(dir);
        load();
        out_.open(path_, std::ios::app);
        if (!out_) throw std::runtime_error("cannot open truant cache " + path_.string() + " for append");
        if (fresh_) out_ << header_ << "\n";
        if (needs_newline_) out_ << "\n";
        out_.flush();
    }

    static std::string file_name(integer m, integer n, integer bound) {
        return "truants_m" + std::to_string(m) + "_n" + std::to_string(n) + "_b" + std::to_string(bound) + ".txt";
    }

    /// $TIGHTPOLY_CACHE_DIR, else ".tightpoly-cache" in the working directory.
    static std::filesystem::path default_dir() {
        if (const char* env = std::getenv("TIGHTPOLY_CACHE_DIR"); env && *env) return env;
        return ".tightpoly-cache";
    }

    std::optional<TruantResult> lookup(const CoeffVector& a) override {
        auto it = entries_.find(a);
        if (it == entries_.end()) {
            ++misses_;
            return std::nullopt;
        }
        ++hits_;
        return it->second;
    }

    void store(const CoeffVector& a, const TruantResult& t) override {
        if (!entries_.emplace(a, t).second) return;
        std::string coeffs = a.to_string();
        out_ << coeffs.substr(1, coeffs.size() - 2) << ' ' << t.to_string() << '\n';
        out_.flush();
        if (!out_) throw std::runtime_error("write to truant cache " + path_.string() + " failed");
    }

    const std::filesystem::path& path() const noexcept { return path_; }
    std::size_t size() const noexcept { return entries_.size(); }
    std::size_t discarded() const noexcept { return discarded_; }
    std::size_t hits() const noexcept { return hits_; }
    std::size_t misses() const noexcept { return misses_; }

private:
    static std::string header_line(integer m, integer n, integer bound) {
        return "# tightpoly truants v1 m=" + std::to_string(m) + " n=" + std::to_string(n) +
               " bound=" + std::to_string(bound);
    }

    void load() {
        std::ifstream in(path_, std::ios::binary);
        if (!in) {
            fresh_ = true;
            return;
        }
        std::stringstream buf;
        buf << in.rdbuf();
        in.close();
        const std::string text = buf.str();
        auto header_end = text.find('\n');
        if (header_end == std::string::npos || text.substr(0, header_end) != header_) {
            std::cerr << "warning: truant cache " << path_ << " has an unexpected header; discarding it\n";
            std::filesystem::remove(path_);
            fresh_ = true;
            return;
        }
        std::size_t pos = header_end + 1;
        while (pos < text.size()) {
            auto eol = text.find('\n', pos);
            if (eol == std::string::npos) {
                // Unterminated tail from an interrupted write.
                ++discarded_;
                needs_newline_ = true;
                break;
            }
            std::string line = text.substr(pos, eol - pos);
            if (!line.empty() && !parse_record(line)) ++discarded_;
            pos = eol + 1;
        }
        if (discarded_ > 0)
            std::cerr << "warning: discarded " << discarded_ << " corrupt record(s) in truant cache " << path_ << "\n";
    }

    bool parse_record(const std::string& line) {
        auto space = line.find(' ');
        if (space == std::string::npos || line.find(' ', space + 1) != std::string::npos) return false;
        try {
            CoeffVector a = CoeffVector::parse(line.substr(0, space));
            std::string t = line.substr(space + 1);
            TruantResult tr;
            if (t == "inf") {
                tr = TruantResult::above_bound();
            } else {
                std::size_t used = 0;
                long long v = std::stoll(t, &used);
                if (used != t.size() || v < 1) return false;
                tr = TruantResult::finite(v);
            }
            entries_.insert_or_assign(std::move(a), tr);
            return true;
        } catch (const std::exception&) {
            return false;
        }
    }

    std::filesystem::path path_;
    std::string header_;
    std::map<CoeffVector, TruantResult> entries_;
    std::ofstream out_;
    bool fresh_ = false;
    bool needs_newline_ = false;
    std::size_t discarded_ = 0;
    std::size_t hits_ = 0;
    std::size_t misses_ = 0;
};

}  // namespace tightpoly
