#include "ellkern/partition.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace ellkern {

void Partition::normalize() {
    for (size_t i = 0; i + 1 < parts_.size(); ++i)
        if (parts_[i] < parts_[i + 1])
            throw std::invalid_argument("Partition: parts must be weakly decreasing");
    if (!parts_.empty() && parts_.back() < 0)
        throw std::invalid_argument("Partition: negative part");
    while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
}

long Partition::weight() const {
    long w = 0;
    for (long p : parts_) w += p;
    return w;
}

bool Partition::contains(const Partition& inner) const {
    for (size_t i = 0; i < inner.length(); ++i)
        if ((*this)[i] < inner[i]) return false;
    return true;
}

Partition Partition::conjugate() const {
    if (parts_.empty()) return {};
    std::vector<long> c(static_cast<size_t>(parts_[0]), 0);
    for (long p : parts_)
        for (long j = 0; j < p; ++j) ++c[static_cast<size_t>(j)];
    return Partition(std::move(c));
}

Partition Partition::doubled_rows() const {
    std::vector<long> r;
    r.reserve(parts_.size() * 2);
    for (long p : parts_) {
        r.push_back(p);
        r.push_back(p);
    }
    return Partition(std::move(r));
}

Partition Partition::doubled_parts() const {
    std::vector<long> r(parts_);
    for (long& p : r) p *= 2;
    return Partition(std::move(r));
}

std::string Partition::to_string() const {
    if (parts_.empty()) return "-";
    std::ostringstream os;
    for (size_t i = 0; i < parts_.size(); ++i) {
        if (i) os << ' ';
        os << parts_[i];
    }
    return os.str();
}

Partition Partition::parse(const std::string& text) {
    std::istringstream is(text);
    std::vector<long> parts;
    std::string tok;
    while (is >> tok) {
        if (tok == "-") continue;
        parts.push_back(std::stol(tok));
    }
    return Partition(std::move(parts));
}

bool vertical_strip(const Partition& lam, const Partition& mu) {
    if (!lam.contains(mu)) return false;
    for (size_t i = 0; i < lam.length(); ++i)
        if (lam[i] - mu[i] > 1) return false;
    return true;
}

bool horizontal_strip(const Partition& lam, const Partition& mu) {
    if (!lam.contains(mu)) return false;
    for (size_t i = 0; i < lam.length(); ++i)
        if (mu[i] < lam[i + 1]) return false;
    return true;
}

namespace {
void gen_parts(long remaining, long max_part, size_t max_len, std::vector<long>& cur,
               std::vector<Partition>& out) {
    if (remaining == 0) {
        out.emplace_back(cur);
        return;
    }
    if (cur.size() == max_len) return;
    for (long k = std::min(max_part, remaining); k >= 1; --k) {
        cur.push_back(k);
        gen_parts(remaining - k, k, max_len, cur, out);
        cur.pop_back();
    }
}
} // namespace

std::vector<Partition> partitions_up_to(long max_weight, size_t max_length) {
    std::vector<Partition> out;
    out.emplace_back();
    for (long w = 1; w <= max_weight; ++w) {
        std::vector<long> cur;
        gen_parts(w, w, max_length, cur, out);
    }
    return out;
}

std::string PartitionPair::to_string() const {
    return first.to_string() + " | " + second.to_string();
}

PartitionPair PartitionPair::parse(const std::string& text) {
    auto bar = text.find('|');
    if (bar == std::string::npos)
        throw std::invalid_argument("PartitionPair: expected 'a b | c d' form");
    return PartitionPair(Partition::parse(text.substr(0, bar)),
                         Partition::parse(text.substr(bar + 1)));
}

} // namespace ellkern
