#include "histogram.hpp"

#include <cmath>
#include <stdexcept>

namespace cubeph {

bool Rectangle::contains(double birth, double death) const {
    const bool s_ok = strip() ? (birth >= s_lo && birth <= s_hi) : (birth > s_lo && birth <= s_hi);
    return s_ok && death > t_lo && death <= t_hi;
}

std::vector<Rectangle> rectangles(int l) {
    const Histogram h(l);
    const int top = l * h.denominator();
    std::vector<Rectangle> out;
    for (int j = 3; j <= top; ++j) out.push_back(h.rectangle(1, j));
    for (int i = 2; i <= top; ++i)
        for (int j = i + 2; j <= top; ++j) out.push_back(h.rectangle(i, j));
    return out;
}

Histogram::Histogram(int l) : l_(l) {
    if (l < 1 || l > 20) throw std::invalid_argument("histogram fineness must lie in [1, 20]");
}

std::optional<Histogram::Key> Histogram::locate(double birth, double death) const {
    if (!std::isfinite(death) || !(birth >= 0) || !(death > birth)) return std::nullopt;
    const double n = denominator();
    // scaling by a power of two is exact, so ceil gives the dyadic cell directly
    const double jd = std::ceil(death * n);
    if (jd < 3 || jd > static_cast<double>(l_) * n) return std::nullopt;
    const int j = static_cast<int>(jd);
    if (birth * n <= 1) return Key{1, j};
    const int i = static_cast<int>(std::ceil(birth * n));
    if (j - i < 2) return std::nullopt;
    return Key{i, j};
}

Rectangle Histogram::rectangle(int i, int j) const {
    const double n = denominator();
    Rectangle r;
    r.i = i;
    r.j = j;
    r.s_lo = i == 1 ? 0.0 : (i - 1) / n;
    r.s_hi = i / n;
    r.t_lo = (j - 1) / n;
    r.t_hi = j / n;
    return r;
}

void Histogram::add(double birth, double death, double weight) {
    if (!std::isfinite(death)) {
        infinite_ += weight;
        return;
    }
    if (const auto key = locate(birth, death))
        counts_[*key] += weight;
    else
        overflow_ += weight;
}

void Histogram::merge(const Histogram& other) {
    if (other.l_ != l_) throw std::invalid_argument("histogram fineness differs");
    for (const auto& [key, c] : other.counts_) counts_[key] += c;
    overflow_ += other.overflow_;
    infinite_ += other.infinite_;
}

void Histogram::scale(double factor) {
    for (auto& [key, c] : counts_) c *= factor;
    overflow_ *= factor;
    infinite_ *= factor;
}

double Histogram::count(int i, int j) const {
    const auto it = counts_.find({i, j});
    return it == counts_.end() ? 0.0 : it->second;
}

double Histogram::total() const {
    double t = overflow_ + infinite_;
    for (const auto& [key, c] : counts_) t += c;
    return t;
}

Histogram histogram(const PersistenceDiagram& diagram, int q, int l) {
    Histogram h(l);
    for (const auto& p : diagram.pairs(q)) h.add(p.birth, p.death);
    return h;
}

}  // namespace cubeph
