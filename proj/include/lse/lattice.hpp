#pragma once

#include <array>
#include <compare>
#include <complex>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lse {

inline constexpr int kMaxDim = 8;

// A lattice site in d dimensions (d <= kMaxDim). Coordinates beyond dim are zero.
struct Site {
    std::array<std::int64_t, kMaxDim> c{};
    int dim = 0;

    static Site zero(int d) {
        Site s;
        s.dim = d;
        return s;
    }
    static Site unit(int d, int axis, int sign) {
        Site s = zero(d);
        s.c[axis] = sign;
        return s;
    }
    static Site of(std::initializer_list<std::int64_t> coords) {
        Site s;
        s.dim = static_cast<int>(coords.size());
        int i = 0;
        for (auto v : coords) s.c[i++] = v;
        return s;
    }

    std::int64_t operator[](int i) const { return c[i]; }
    std::int64_t& operator[](int i) { return c[i]; }

    Site operator+(const Site& o) const {
        Site r = *this;
        for (int i = 0; i < dim; ++i) r.c[i] += o.c[i];
        return r;
    }
    Site operator-(const Site& o) const {
        Site r = *this;
        for (int i = 0; i < dim; ++i) r.c[i] -= o.c[i];
        return r;
    }
    Site operator-() const {
        Site r = *this;
        for (int i = 0; i < dim; ++i) r.c[i] = -r.c[i];
        return r;
    }

    std::int64_t l1() const {
        std::int64_t n = 0;
        for (int i = 0; i < dim; ++i) n += c[i] < 0 ? -c[i] : c[i];
        return n;
    }

    bool operator==(const Site& o) const {
        if (dim != o.dim) return false;
        for (int i = 0; i < dim; ++i)
            if (c[i] != o.c[i]) return false;
        return true;
    }
    // Lexicographic order; only meaningful for equal dims.
    bool operator<(const Site& o) const {
        for (int i = 0; i < dim; ++i) {
            if (c[i] != o.c[i]) return c[i] < o.c[i];
        }
        return false;
    }

    std::string to_string() const;
};

struct SiteHash {
    std::size_t operator()(const Site& s) const {
        std::uint64_t h = 0x9e3779b97f4a7c15ull ^ static_cast<std::uint64_t>(s.dim);
        for (int i = 0; i < s.dim; ++i) {
            h ^= static_cast<std::uint64_t>(s.c[i]) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
            h *= 0xff51afd7ed558ccdull;
            h ^= h >> 33;
        }
        return static_cast<std::size_t>(h);
    }
};

// Axis-aligned box of sites, inclusive bounds.
struct Box {
    Site lo, hi;

    int dim() const { return lo.dim; }
    static Box cube(int d, std::int64_t lo_v, std::int64_t hi_v) {
        Box b;
        b.lo = Site::zero(d);
        b.hi = Site::zero(d);
        for (int i = 0; i < d; ++i) {
            b.lo.c[i] = lo_v;
            b.hi.c[i] = hi_v;
        }
        return b;
    }
    bool contains(const Site& s) const {
        for (int i = 0; i < dim(); ++i)
            if (s.c[i] < lo.c[i] || s.c[i] > hi.c[i]) return false;
        return true;
    }
    Box dilated(std::int64_t r) const {
        Box b = *this;
        for (int i = 0; i < dim(); ++i) {
            b.lo.c[i] -= r;
            b.hi.c[i] += r;
        }
        return b;
    }
    // Saturates at 2^63-1.
    std::uint64_t volume() const;
    // All sites in lexicographic order.
    std::vector<Site> sites() const;
};

// Sparse nonnegative field over Z^d. Entries are sorted lexicographically,
// strictly positive, and immutable after construction.
class SiteField {
  public:
    using Entry = std::pair<Site, double>;

    SiteField() = default;
    explicit SiteField(int dim) : dim_(dim) {}

    // Accumulates values; zeros are dropped and negatives rejected at build().
    class Builder {
      public:
        explicit Builder(int dim) : dim_(dim) {}
        void add(const Site& s, double v);
        SiteField build();

      private:
        int dim_;
        std::vector<Entry> raw_;
    };

    static SiteField point_mass(int dim, const Site& s, double v = 1.0);
    static SiteField constant_on_box(const Box& box, double v);
    static SiteField from_entries(int dim, std::vector<Entry> entries);

    int dim() const { return dim_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    const std::vector<Entry>& entries() const { return entries_; }
    double l1_norm() const { return l1_; }
    double max_value() const { return max_; }

    // 0.0 when absent.
    double value_at(const Site& s) const;

    SiteField shifted(const Site& z) const;
    SiteField reflected() const;
    SiteField scaled(double factor) const;
    SiteField restricted(const Box& box) const;

    bool operator==(const SiteField& o) const { return dim_ == o.dim_ && entries_ == o.entries_; }

    // Canonical text form: one line per site, "x1 ... xd value",
    // lexicographic order, 17 significant digits.
    std::string to_text() const;
    static SiteField parse_text(int dim, const std::string& text);

  private:
    int dim_ = 0;
    std::vector<Entry> entries_;
    double l1_ = 0.0;
    double max_ = 0.0;

    void finalize_sorted();
    friend class Builder;
};

// (f*g)_x = sum_y f_{x-y} g_y. Throws std::invalid_argument on dimension mismatch.
SiteField convolve(const SiteField& f, const SiteField& g);

// sum_x f_x exp(i x.theta); theta.size() must equal f.dim().
std::complex<double> fourier_eval(const SiteField& f, std::span<const double> theta);

// Offsets of the closed l1-ball of radius 1, lexicographic. The zero offset
// sits at index dim.
std::vector<Site> unit_ball_offsets(int dim);

}  // namespace lse
