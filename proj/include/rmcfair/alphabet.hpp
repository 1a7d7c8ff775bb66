// Interned symbol alphabets, including flat tuple alphabets used to encode
// k-track relations as plain letter automata.
#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace rmcfair {

using symbol_id = std::uint32_t;
using word = std::vector<symbol_id>;

// An alphabet is an ordered list of distinct symbol names; the position of a
// name is its symbol id. Equality is by name sequence, which is what automaton
// operations use to assert operand compatibility.
class alphabet {
public:
    alphabet() = default;
    explicit alphabet(std::vector<std::string> names);

    symbol_id intern(const std::string& name);
    bool contains(const std::string& name) const { return index_.count(name) != 0; }
    symbol_id id_of(const std::string& name) const;
    const std::string& name_of(symbol_id id) const;
    std::size_t size() const { return names_.size(); }
    const std::vector<std::string>& names() const { return names_; }

    bool operator==(const alphabet& other) const { return names_ == other.names_; }
    bool operator!=(const alphabet& other) const { return !(*this == other); }

private:
    std::vector<std::string> names_;
    std::map<std::string, symbol_id> index_;
};

// Flat product alphabet for k tracks. Symbol ids use mixed-radix order with
// track 0 most significant; names join track names with '/'. Rejects products
// over 10^4 letters, since downstream determinizations would be hopeless
// anyway and an early diagnostic beats an OOM.
alphabet tuple_alphabet(const std::vector<alphabet>& tracks);

constexpr std::size_t max_tuple_letters = 10000;

// Mixed-radix helpers for tuple alphabets built by tuple_alphabet.
symbol_id tuple_pack(const std::vector<symbol_id>& parts, const std::vector<std::size_t>& sizes);
std::vector<symbol_id> tuple_unpack(symbol_id id, const std::vector<std::size_t>& sizes);

// Renders a word as space-separated symbol names ("T Tm B").
std::string format_word(const word& w, const alphabet& alpha);

} // namespace rmcfair
