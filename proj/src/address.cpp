#include "brush/address.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace brush::model {

std::string to_string(const Symbol& s) {
    return std::to_string(s.index) + (s.side == Symbol::Side::R ? "R" : "L");
}

Symbol parse_symbol(const std::string& text) {
    if (text.size() < 2) throw std::invalid_argument("symbol too short: '" + text + "'");
    char side = text.back();
    if (side != 'L' && side != 'R')
        throw std::invalid_argument("symbol must end in L or R: '" + text + "'");
    size_t pos = 0;
    int64_t n = std::stoll(text.substr(0, text.size() - 1), &pos);
    if (pos != text.size() - 1)
        throw std::invalid_argument("bad symbol index: '" + text + "'");
    return Symbol{n, side == 'R' ? Symbol::Side::R : Symbol::Side::L};
}

ExternalAddress::ExternalAddress(std::vector<Symbol> preperiod, std::vector<Symbol> period)
    : preperiod_(std::move(preperiod)), period_(std::move(period)) {
    if (period_.empty()) throw std::invalid_argument("address period must be nonempty");
    canonicalize();
}

namespace {

// Reduce a word to its primitive root (w = r^k with k maximal).
void primitive_root(std::vector<Symbol>& w) {
    const size_t q = w.size();
    for (size_t d = 1; d <= q / 2; ++d) {
        if (q % d != 0) continue;
        bool ok = true;
        for (size_t i = d; i < q && ok; ++i) ok = (w[i] == w[i % d]);
        if (ok) {
            w.resize(d);
            return;
        }
    }
}

}  // namespace

void ExternalAddress::canonicalize() {
    primitive_root(period_);
    // Absorb a preperiod suffix that matches the rotation-aligned period end:
    // P + W W ... with last(P) == last(W) equals P' + W' W' ... where W' is W
    // rotated right by one.
    while (!preperiod_.empty() && preperiod_.back() == period_.back()) {
        preperiod_.pop_back();
        std::rotate(period_.rbegin(), period_.rbegin() + 1, period_.rend());
    }
}

ExternalAddress ExternalAddress::shifted() const {
    if (!preperiod_.empty()) {
        std::vector<Symbol> p(preperiod_.begin() + 1, preperiod_.end());
        return ExternalAddress(std::move(p), period_);
    }
    std::vector<Symbol> w = period_;
    std::rotate(w.begin(), w.begin() + 1, w.end());
    return ExternalAddress({}, std::move(w));
}

bool ExternalAddress::tail_is_zero_constant() const {
    // Canonical form: a constant tail means period == {0_R} or {0_L}.
    return period_.size() == 1 && period_[0].index == 0;
}

int64_t ExternalAddress::max_abs_entry() const {
    int64_t m = 0;
    for (const auto& s : preperiod_) m = std::max(m, s.abs_index());
    for (const auto& s : period_) m = std::max(m, s.abs_index());
    return m;
}

std::strong_ordering ExternalAddress::operator<=>(const ExternalAddress& o) const {
    if (*this == o) return std::strong_ordering::equal;
    // Distinct canonical eventually periodic sequences differ within
    // pre1 + pre2 + lcm-bounded many entries; pre1+pre2+per1*per2 suffices.
    const size_t bound = preperiod_.size() + o.preperiod_.size() +
                         period_.size() * o.period_.size() + 1;
    for (size_t i = 0; i < bound; ++i) {
        auto a = entry(i).key(), b = o.entry(i).key();
        if (a != b) return a <=> b;
    }
    return std::strong_ordering::equal;  // unreachable for canonical forms
}

std::string to_string(const ExternalAddress& a) {
    std::ostringstream out;
    for (size_t i = 0; i < a.preperiod().size(); ++i) {
        if (i) out << ',';
        out << to_string(a.preperiod()[i]);
    }
    out << '|';
    for (size_t i = 0; i < a.period().size(); ++i) {
        if (i) out << ',';
        out << to_string(a.period()[i]);
    }
    return out.str();
}

namespace {

std::vector<Symbol> parse_symbol_list(const std::string& text) {
    std::vector<Symbol> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        if (!item.empty()) out.push_back(parse_symbol(item));
    }
    return out;
}

}  // namespace

ExternalAddress parse_address(const std::string& text) {
    auto bar = text.find('|');
    if (bar == std::string::npos)
        return ExternalAddress({}, parse_symbol_list(text));
    return ExternalAddress(parse_symbol_list(text.substr(0, bar)),
                           parse_symbol_list(text.substr(bar + 1)));
}

Itinerary::Itinerary(std::vector<ItineraryEntry> preperiod, std::vector<ItineraryEntry> period)
    : preperiod_(std::move(preperiod)), period_(std::move(period)) {
    if (period_.empty()) throw std::invalid_argument("itinerary period must be nonempty");
    // Same canonicalization as addresses.
    const size_t q = period_.size();
    for (size_t d = 1; d <= q / 2; ++d) {
        if (q % d != 0) continue;
        bool ok = true;
        for (size_t i = d; i < q && ok; ++i) ok = (period_[i] == period_[i % d]);
        if (ok) {
            period_.resize(d);
            break;
        }
    }
    while (!preperiod_.empty() && preperiod_.back() == period_.back()) {
        preperiod_.pop_back();
        std::rotate(period_.rbegin(), period_.rbegin() + 1, period_.rend());
    }
}

std::string to_string(const Itinerary& it) {
    std::ostringstream out;
    auto entry = [&](const ItineraryEntry& e) {
        out << '(' << e.n << ',' << e.k << ')';
    };
    for (const auto& e : it.preperiod()) entry(e);
    out << '|';
    for (const auto& e : it.period()) entry(e);
    return out.str();
}

}  // namespace brush::model
