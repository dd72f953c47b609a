#include "lse/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace lse {

std::string Site::to_string() const {
    std::string s = "(";
    for (int i = 0; i < dim; ++i) {
        s += std::to_string(c[i]);
        if (i + 1 < dim) s += ",";
    }
    s += ")";
    return s;
}

std::uint64_t Box::volume() const {
    unsigned __int128 v = 1;
    for (int i = 0; i < dim(); ++i) {
        if (hi.c[i] < lo.c[i]) return 0;
        v *= static_cast<unsigned __int128>(hi.c[i] - lo.c[i] + 1);
        if (v > static_cast<unsigned __int128>(INT64_MAX)) return static_cast<std::uint64_t>(INT64_MAX);
    }
    return static_cast<std::uint64_t>(v);
}

std::vector<Site> Box::sites() const {
    std::vector<Site> out;
    out.reserve(static_cast<std::size_t>(volume()));
    Site s = lo;
    const int d = dim();
    while (true) {
        out.push_back(s);
        int axis = d - 1;
        while (axis >= 0) {
            if (++s.c[axis] <= hi.c[axis]) break;
            s.c[axis] = lo.c[axis];
            --axis;
        }
        if (axis < 0) break;
    }
    return out;
}

void SiteField::Builder::add(const Site& s, double v) {
    if (s.dim != dim_) throw std::invalid_argument("SiteField: site dimension mismatch");
    raw_.push_back({s, v});
}

SiteField SiteField::Builder::build() {
    std::sort(raw_.begin(), raw_.end(),
              [](const Entry& a, const Entry& b) { return a.first < b.first; });
    SiteField f(dim_);
    for (std::size_t i = 0; i < raw_.size();) {
        double acc = 0.0;
        std::size_t j = i;
        while (j < raw_.size() && raw_[j].first == raw_[i].first) acc += raw_[j++].second;
        if (std::isnan(acc)) throw std::invalid_argument("SiteField: NaN value");
        if (acc < 0.0) throw std::invalid_argument("SiteField: negative value");
        if (acc > 0.0) f.entries_.push_back({raw_[i].first, acc});
        i = j;
    }
    f.finalize_sorted();
    return f;
}

void SiteField::finalize_sorted() {
    l1_ = 0.0;
    max_ = 0.0;
    for (const auto& [s, v] : entries_) {
        l1_ += v;
        max_ = std::max(max_, v);
    }
}

SiteField SiteField::point_mass(int dim, const Site& s, double v) {
    Builder b(dim);
    b.add(s, v);
    return b.build();
}

SiteField SiteField::constant_on_box(const Box& box, double v) {
    Builder b(box.dim());
    if (v != 0.0) {
        for (const Site& s : box.sites()) b.add(s, v);
    }
    return b.build();
}

SiteField SiteField::from_entries(int dim, std::vector<Entry> entries) {
    Builder b(dim);
    for (auto& [s, v] : entries) b.add(s, v);
    return b.build();
}

double SiteField::value_at(const Site& s) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), s,
                               [](const Entry& e, const Site& key) { return e.first < key; });
    if (it != entries_.end() && it->first == s) return it->second;
    return 0.0;
}

SiteField SiteField::shifted(const Site& z) const {
    SiteField f(dim_);
    f.entries_.reserve(entries_.size());
    for (const auto& [s, v] : entries_) f.entries_.push_back({s + z, v});
    f.finalize_sorted();
    return f;
}

SiteField SiteField::reflected() const {
    SiteField f(dim_);
    f.entries_.reserve(entries_.size());
    for (const auto& [s, v] : entries_) f.entries_.push_back({-s, v});
    std::sort(f.entries_.begin(), f.entries_.end(),
              [](const Entry& a, const Entry& b) { return a.first < b.first; });
    f.finalize_sorted();
    return f;
}

SiteField SiteField::scaled(double factor) const {
    if (factor < 0.0) throw std::invalid_argument("SiteField: negative scale factor");
    SiteField f(dim_);
    if (factor > 0.0) {
        f.entries_.reserve(entries_.size());
        for (const auto& [s, v] : entries_) f.entries_.push_back({s, v * factor});
    }
    f.finalize_sorted();
    return f;
}

SiteField SiteField::restricted(const Box& box) const {
    SiteField f(dim_);
    for (const auto& [s, v] : entries_)
        if (box.contains(s)) f.entries_.push_back({s, v});
    f.finalize_sorted();
    return f;
}

std::string SiteField::to_text() const {
    std::string out;
    char buf[64];
    for (const auto& [s, v] : entries_) {
        for (int i = 0; i < dim_; ++i) {
            out += std::to_string(s.c[i]);
            out += ' ';
        }
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        out += buf;
        out += '\n';
    }
    return out;
}

SiteField SiteField::parse_text(int dim, const std::string& text) {
    Builder b(dim);
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream ls(line);
        Site s = Site::zero(dim);
        for (int i = 0; i < dim; ++i) {
            if (!(ls >> s.c[i]))
                throw std::invalid_argument("SiteField text line " + std::to_string(line_no) +
                                            ": expected " + std::to_string(dim) + " coordinates");
        }
        double v;
        if (!(ls >> v))
            throw std::invalid_argument("SiteField text line " + std::to_string(line_no) +
                                        ": missing value");
        b.add(s, v);
    }
    return b.build();
}

SiteField convolve(const SiteField& f, const SiteField& g) {
    if (f.dim() != g.dim()) throw std::invalid_argument("convolve: dimension mismatch");
    // Canonical operand order makes convolution exactly commutative.
    const SiteField* outer = &f;
    const SiteField* inner = &g;
    bool swap = outer->size() > inner->size();
    if (outer->size() == inner->size()) swap = inner->entries() < outer->entries();
    if (swap) std::swap(outer, inner);

    SiteField::Builder b(f.dim());
    for (const auto& [y, gv] : outer->entries())
        for (const auto& [x, fv] : inner->entries()) b.add(x + y, fv * gv);
    return b.build();
}

std::complex<double> fourier_eval(const SiteField& f, std::span<const double> theta) {
    if (static_cast<int>(theta.size()) != f.dim())
        throw std::invalid_argument("fourier_eval: theta dimension mismatch");
    std::complex<double> acc{0.0, 0.0};
    for (const auto& [s, v] : f.entries()) {
        double phase = 0.0;
        for (int i = 0; i < f.dim(); ++i) phase += static_cast<double>(s.c[i]) * theta[i];
        acc += v * std::complex<double>(std::cos(phase), std::sin(phase));
    }
    return acc;
}

std::vector<Site> unit_ball_offsets(int dim) {
    std::vector<Site> offs;
    offs.reserve(2 * dim + 1);
    for (int j = 0; j < dim; ++j) offs.push_back(Site::unit(dim, j, -1));
    offs.push_back(Site::zero(dim));
    for (int j = dim - 1; j >= 0; --j) offs.push_back(Site::unit(dim, j, +1));
    std::sort(offs.begin(), offs.end());
    return offs;
}

}  // namespace lse
