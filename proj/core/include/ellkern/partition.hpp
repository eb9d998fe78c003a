#ifndef ELLKERN_PARTITION_HPP
#define ELLKERN_PARTITION_HPP

#include <string>
#include <vector>

namespace ellkern {

// Weakly decreasing nonnegative integers, stored without trailing zeros so
// equality is structural.
class Partition {
  public:
    Partition() = default;
    Partition(std::initializer_list<long> parts) : parts_(parts) { normalize(); }
    explicit Partition(std::vector<long> parts) : parts_(std::move(parts)) { normalize(); }

    const std::vector<long>& parts() const { return parts_; }
    long operator[](size_t i) const { return i < parts_.size() ? parts_[i] : 0; }
    size_t length() const { return parts_.size(); }
    long weight() const;
    bool empty() const { return parts_.empty(); }

    bool operator==(const Partition& o) const { return parts_ == o.parts_; }
    bool operator!=(const Partition& o) const { return !(*this == o); }
    bool operator<(const Partition& o) const { return parts_ < o.parts_; }

    // componentwise inclusion
    bool contains(const Partition& inner) const;

    Partition conjugate() const;
    // lambda^2: each part repeated twice, (lambda^2)_i = lambda_{ceil(i/2)}
    Partition doubled_rows() const;
    // 2*lambda: each part doubled
    Partition doubled_parts() const;

    std::string to_string() const;
    static Partition parse(const std::string& text);

  private:
    void normalize();
    std::vector<long> parts_;
};

// lambda/mu removes at most one box per row (and mu subset lambda)
bool vertical_strip(const Partition& lam, const Partition& mu);
// lambda/mu removes at most one box per column
bool horizontal_strip(const Partition& lam, const Partition& mu);

// all partitions with weight <= max_weight and length <= max_length, ordered
// by (weight, lex)
std::vector<Partition> partitions_up_to(long max_weight, size_t max_length);

// Pair (lambda, mu): lambda carries the p-power shifts, mu the q-power shifts.
struct PartitionPair {
    Partition first;  // p-side
    Partition second; // q-side

    PartitionPair() = default;
    PartitionPair(Partition a, Partition b) : first(std::move(a)), second(std::move(b)) {}
    static PartitionPair q_only(Partition mu) { return PartitionPair(Partition(), std::move(mu)); }

    bool empty() const { return first.empty() && second.empty(); }
    size_t length() const { return std::max(first.length(), second.length()); }

    bool operator==(const PartitionPair& o) const {
        return first == o.first && second == o.second;
    }
    // product of the inclusion orders on the two pieces
    bool contains(const PartitionPair& inner) const {
        return first.contains(inner.first) && second.contains(inner.second);
    }

    PartitionPair doubled_rows() const {
        return PartitionPair(first.doubled_rows(), second.doubled_rows());
    }
    // (1,2)(lambda,mu) = (lambda, 2 mu)
    PartitionPair one_two() const { return PartitionPair(first, second.doubled_parts()); }
    PartitionPair doubled_parts() const {
        return PartitionPair(first.doubled_parts(), second.doubled_parts());
    }

    // text form "3 1 | 2"
    std::string to_string() const;
    static PartitionPair parse(const std::string& text);
};

} // namespace ellkern

#endif
