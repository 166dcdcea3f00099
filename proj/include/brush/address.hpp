#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace brush::model {

// One entry of an external address: an integer with a side tag, n_L or n_R.
// The order ... < i_L < i_R < (i+1)_L < ... is realized by key().
struct Symbol {
    enum class Side : uint8_t { L, R };
    int64_t index = 0;
    Side side = Side::R;

    int64_t abs_index() const { return index < 0 ? -index : index; }
    // 2*index + (side==R) embeds the total order into the integers.
    // index is bounded well below 2^62 in practice.
    int64_t key() const { return 2 * index + (side == Side::R ? 1 : 0); }

    bool operator==(const Symbol&) const = default;
    bool operator<(const Symbol& o) const { return key() < o.key(); }
};

inline Symbol sym_L(int64_t n) { return Symbol{n, Symbol::Side::L}; }
inline Symbol sym_R(int64_t n) { return Symbol{n, Symbol::Side::R}; }

std::string to_string(const Symbol& s);          // "3L", "-2R"
Symbol parse_symbol(const std::string& text);    // throws std::invalid_argument

// Eventually periodic sequence over Z_L u Z_R, stored as preperiod + period.
// Construction canonicalizes: the period is primitive (not a proper power)
// and the preperiod is minimal (absorbable suffixes are rotated into the
// period). Equality and ordering are well defined on canonical forms.
class ExternalAddress {
  public:
    ExternalAddress() : period_{sym_R(0)} {}
    ExternalAddress(std::vector<Symbol> preperiod, std::vector<Symbol> period);

    static ExternalAddress periodic(std::vector<Symbol> period) {
        return ExternalAddress({}, std::move(period));
    }

    const std::vector<Symbol>& preperiod() const { return preperiod_; }
    const std::vector<Symbol>& period() const { return period_; }

    Symbol entry(size_t n) const {
        return n < preperiod_.size()
                   ? preperiod_[n]
                   : period_[(n - preperiod_.size()) % period_.size()];
    }

    ExternalAddress shifted() const;  // sigma: drop entry(0)

    // True iff some shift is constantly 0_R or constantly 0_L
    // (the addresses whose rays carry no itinerary).
    bool tail_is_zero_constant() const;

    int64_t max_abs_entry() const;

    bool operator==(const ExternalAddress&) const = default;

    // Lexicographic order induced by the Symbol order.
    std::strong_ordering operator<=>(const ExternalAddress& o) const;

  private:
    std::vector<Symbol> preperiod_;
    std::vector<Symbol> period_;
    void canonicalize();
};

// Text form "1R|0R": comma-separated preperiod, bar, comma-separated period.
// A string without a bar denotes a purely periodic address.
std::string to_string(const ExternalAddress& a);
ExternalAddress parse_address(const std::string& text);

// Itinerary over the domains U_{(n,k)}: eventually periodic list of
// (n, k) with k in {0,1}.
struct ItineraryEntry {
    int64_t n = 0;
    int k = 0;
    bool operator==(const ItineraryEntry&) const = default;
};

class Itinerary {
  public:
    Itinerary() : period_{{0, 0}} {}
    Itinerary(std::vector<ItineraryEntry> preperiod, std::vector<ItineraryEntry> period);

    const std::vector<ItineraryEntry>& preperiod() const { return preperiod_; }
    const std::vector<ItineraryEntry>& period() const { return period_; }

    ItineraryEntry entry(size_t i) const {
        return i < preperiod_.size()
                   ? preperiod_[i]
                   : period_[(i - preperiod_.size()) % period_.size()];
    }

    bool operator==(const Itinerary&) const = default;

  private:
    std::vector<ItineraryEntry> preperiod_;
    std::vector<ItineraryEntry> period_;
};

std::string to_string(const Itinerary& it);

}  // namespace brush::model
