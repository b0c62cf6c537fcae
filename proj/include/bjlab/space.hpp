#pragma once

// Space descriptors for finite dimensional real normed spaces.
//
// Three families are supported:
//   lp(p, n)        l_p^n with 1 <= p <= inf
//   poly[g1;g2;..]  polyhedral norm ||x|| = max_j |<g_j, x>|, generators
//                   listed one per +- pair and required to span R^n with no
//                   generator parallel to another
//   sup(S1,S2,..)   finite l_inf direct sum of component spaces
//
// Descriptors are plain values with structural equality and a canonical text
// form; parse(to_string(s)) == s holds exactly because numbers are printed
// with shortest round-trip formatting.

#include <charconv>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

namespace bjlab {

using vec = std::vector<double>;

class parse_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class dimension_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class invalid_descriptor : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Raised when an operation needs a finite extreme point description but the
// unit ball has a continuum of extreme points (smooth l_p, 1 < p < inf).
class unsupported_space : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

constexpr double kInf = std::numeric_limits<double>::infinity();
// Exponents above this are rejected at construction; numerically they are
// indistinguishable from inf while |x_i|^p overflows long before.
constexpr double kMaxExponent = 1e6;

// Shortest decimal form that parses back to the identical double.
inline std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

class Space {
public:
    enum class Kind { lp, polyhedral, sup_sum };

    static Space lp(double p, std::size_t n) {
        if (std::isnan(p) || p < 1.0)
            throw invalid_descriptor("lp exponent must satisfy p >= 1");
        if (p > kMaxExponent && !std::isinf(p))
            throw invalid_descriptor("lp exponent above 1e6; use inf");
        if (n == 0) throw invalid_descriptor("lp dimension must be positive");
        Space s;
        s.kind_ = Kind::lp;
        s.p_ = p;
        s.dim_ = n;
        return s;
    }

    static Space polyhedral(std::vector<vec> generators) {
        if (generators.empty())
            throw invalid_descriptor("polyhedral space needs at least one generator");
        const std::size_t n = generators.front().size();
        if (n == 0) throw invalid_descriptor("polyhedral generators must be nonempty");
        for (const auto& g : generators)
            if (g.size() != n)
                throw invalid_descriptor("polyhedral generators have mixed dimensions");
        validate_generators(generators, n);
        Space s;
        s.kind_ = Kind::polyhedral;
        s.dim_ = n;
        s.gens_ = std::move(generators);
        return s;
    }

    static Space sup_sum(std::vector<Space> blocks) {
        if (blocks.empty())
            throw invalid_descriptor("sup_sum needs at least one block");
        std::size_t d = 0, depth = 1;
        for (const auto& b : blocks) {
            d += b.dim();
            depth = std::max(depth, b.depth() + 1);
        }
        if (depth > 8) throw invalid_descriptor("sup_sum nesting depth exceeds 8");
        Space s;
        s.kind_ = Kind::sup_sum;
        s.dim_ = d;
        s.blocks_ = std::move(blocks);
        return s;
    }

    Kind kind() const { return kind_; }
    std::size_t dim() const { return dim_; }

    double p() const {
        require(kind_ == Kind::lp, "p() on non-lp space");
        return p_;
    }

    bool is_lp(double want) const { return kind_ == Kind::lp && p_ == want; }

    const std::vector<vec>& generators() const {
        require(kind_ == Kind::polyhedral, "generators() on non-polyhedral space");
        return gens_;
    }

    const std::vector<Space>& blocks() const {
        require(kind_ == Kind::sup_sum, "blocks() on non-sup_sum space");
        return blocks_;
    }

    std::size_t block_offset(std::size_t k) const {
        const auto& bs = blocks();
        if (k >= bs.size()) throw dimension_error("block index out of range");
        std::size_t off = 0;
        for (std::size_t i = 0; i < k; ++i) off += bs[i].dim();
        return off;
    }

    std::size_t depth() const {
        if (kind_ != Kind::sup_sum) return 1;
        std::size_t d = 1;
        for (const auto& b : blocks_) d = std::max(d, b.depth());
        return d + 1;
    }

    bool operator==(const Space& o) const {
        if (kind_ != o.kind_ || dim_ != o.dim_) return false;
        switch (kind_) {
            case Kind::lp: return p_ == o.p_;
            case Kind::polyhedral: return gens_ == o.gens_;
            case Kind::sup_sum: return blocks_ == o.blocks_;
        }
        return false;
    }
    bool operator!=(const Space& o) const { return !(*this == o); }

    std::string to_string() const {
        std::string out;
        print(out);
        return out;
    }

    static Space parse(std::string_view text) {
        std::size_t pos = 0;
        Space s = parse_space(text, pos);
        skip_ws(text, pos);
        if (pos != text.size())
            throw parse_error("trailing characters after space descriptor at offset " + std::to_string(pos));
        return s;
    }

private:
    Space() = default;

    static void require(bool ok, const char* msg) {
        if (!ok) throw std::logic_error(msg);
    }

    static void validate_generators(const std::vector<vec>& gens, std::size_t n) {
        // reject zero generators and (anti)parallel pairs; generators are one
        // per +- pair, so a negative multiple is as redundant as a positive one
        auto dot = [](const vec& a, const vec& b) {
            double s = 0;
            for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
            return s;
        };
        std::vector<double> nrm(gens.size());
        for (std::size_t i = 0; i < gens.size(); ++i) {
            nrm[i] = std::sqrt(dot(gens[i], gens[i]));
            if (!(nrm[i] > 0.0) || !std::isfinite(nrm[i]))
                throw invalid_descriptor("polyhedral generator is zero or non-finite");
        }
        for (std::size_t i = 0; i < gens.size(); ++i)
            for (std::size_t j = i + 1; j < gens.size(); ++j)
                if (std::fabs(dot(gens[i], gens[j])) >= nrm[i] * nrm[j] * (1.0 - 1e-12))
                    throw invalid_descriptor("polyhedral generators may not be multiples of one another");
        // span check by Gaussian elimination on the generator matrix
        std::vector<vec> m = gens;
        std::size_t rank = 0;
        for (std::size_t col = 0; col < n && rank < m.size(); ++col) {
            std::size_t piv = rank;
            for (std::size_t r = rank + 1; r < m.size(); ++r)
                if (std::fabs(m[r][col]) > std::fabs(m[piv][col])) piv = r;
            if (std::fabs(m[piv][col]) < 1e-12) continue;
            std::swap(m[piv], m[rank]);
            for (std::size_t r = 0; r < m.size(); ++r) {
                if (r == rank) continue;
                const double fac = m[r][col] / m[rank][col];
                for (std::size_t c = col; c < n; ++c) m[r][c] -= fac * m[rank][c];
            }
            ++rank;
        }
        if (rank < n)
            throw invalid_descriptor("polyhedral generators do not span the space");
    }

    void print(std::string& out) const {
        switch (kind_) {
            case Kind::lp:
                out += "lp(";
                out += std::isinf(p_) ? "inf" : format_double(p_);
                out += ',';
                out += std::to_string(dim_);
                out += ')';
                break;
            case Kind::polyhedral: {
                out += "poly[";
                for (std::size_t j = 0; j < gens_.size(); ++j) {
                    if (j) out += ';';
                    for (std::size_t i = 0; i < gens_[j].size(); ++i) {
                        if (i) out += ',';
                        out += format_double(gens_[j][i]);
                    }
                }
                out += ']';
                break;
            }
            case Kind::sup_sum:
                out += "sup(";
                for (std::size_t k = 0; k < blocks_.size(); ++k) {
                    if (k) out += ',';
                    blocks_[k].print(out);
                }
                out += ')';
                break;
        }
    }

    static void skip_ws(std::string_view t, std::size_t& pos) {
        while (pos < t.size() && (t[pos] == ' ' || t[pos] == '\t' || t[pos] == '\n')) ++pos;
    }

    static void expect(std::string_view t, std::size_t& pos, char c) {
        skip_ws(t, pos);
        if (pos >= t.size() || t[pos] != c)
            throw parse_error(std::string("expected '") + c + "' at offset " + std::to_string(pos));
        ++pos;
    }

    static double parse_number(std::string_view t, std::size_t& pos) {
        skip_ws(t, pos);
        if (t.substr(pos, 3) == "inf") {
            pos += 3;
            return kInf;
        }
        double v = 0;
        auto res = std::from_chars(t.data() + pos, t.data() + t.size(), v);
        if (res.ec != std::errc())
            throw parse_error("expected a number at offset " + std::to_string(pos));
        pos = static_cast<std::size_t>(res.ptr - t.data());
        return v;
    }

    static std::size_t parse_dim(std::string_view t, std::size_t& pos) {
        skip_ws(t, pos);
        std::size_t v = 0;
        auto res = std::from_chars(t.data() + pos, t.data() + t.size(), v);
        if (res.ec != std::errc())
            throw parse_error("expected a dimension at offset " + std::to_string(pos));
        pos = static_cast<std::size_t>(res.ptr - t.data());
        return v;
    }

    static Space parse_space(std::string_view t, std::size_t& pos) {
        skip_ws(t, pos);
        if (t.substr(pos, 3) == "lp(") {
            pos += 3;
            const double p = parse_number(t, pos);
            expect(t, pos, ',');
            const std::size_t n = parse_dim(t, pos);
            expect(t, pos, ')');
            return lp(p, n);
        }
        if (t.substr(pos, 5) == "poly[") {
            pos += 5;
            std::vector<vec> gens;
            vec cur;
            cur.push_back(parse_number(t, pos));
            for (;;) {
                skip_ws(t, pos);
                if (pos >= t.size())
                    throw parse_error("unterminated poly descriptor");
                const char c = t[pos];
                if (c == ',') {
                    ++pos;
                    cur.push_back(parse_number(t, pos));
                } else if (c == ';') {
                    ++pos;
                    gens.push_back(std::move(cur));
                    cur.clear();
                    cur.push_back(parse_number(t, pos));
                } else if (c == ']') {
                    ++pos;
                    gens.push_back(std::move(cur));
                    return polyhedral(std::move(gens));
                } else {
                    throw parse_error("unexpected character in poly descriptor at offset " + std::to_string(pos));
                }
            }
        }
        if (t.substr(pos, 4) == "sup(") {
            pos += 4;
            std::vector<Space> blocks;
            blocks.push_back(parse_space(t, pos));
            for (;;) {
                skip_ws(t, pos);
                if (pos >= t.size())
                    throw parse_error("unterminated sup descriptor");
                if (t[pos] == ',') {
                    ++pos;
                    blocks.push_back(parse_space(t, pos));
                } else if (t[pos] == ')') {
                    ++pos;
                    return sup_sum(std::move(blocks));
                } else {
                    throw parse_error("unexpected character in sup descriptor at offset " + std::to_string(pos));
                }
            }
        }
        throw parse_error("expected lp(, poly[ or sup( at offset " + std::to_string(pos));
    }

    Kind kind_ = Kind::lp;
    double p_ = 2.0;
    std::size_t dim_ = 0;
    std::vector<vec> gens_;
    std::vector<Space> blocks_;
};

inline void check_dim(const Space& s, const vec& x, const char* what) {
    if (x.size() != s.dim())
        throw dimension_error(std::string(what) + ": vector has dimension " + std::to_string(x.size()) +
                              ", space has dimension " + std::to_string(s.dim()));
}

inline vec block_slice(const Space& s, const vec& x, std::size_t k) {
    const auto& bs = s.blocks();
    const std::size_t off = s.block_offset(k);
    return vec(x.begin() + static_cast<std::ptrdiff_t>(off),
               x.begin() + static_cast<std::ptrdiff_t>(off + bs[k].dim()));
}

inline void block_assign(const Space& s, vec& x, std::size_t k, const vec& value) {
    const auto& bs = s.blocks();
    if (value.size() != bs[k].dim()) throw dimension_error("block_assign: block size mismatch");
    const std::size_t off = s.block_offset(k);
    for (std::size_t i = 0; i < value.size(); ++i) x[off + i] = value[i];
}

} // namespace bjlab
