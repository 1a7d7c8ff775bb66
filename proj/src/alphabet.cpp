#include "rmcfair/alphabet.hpp"

#include <sstream>

namespace rmcfair {

alphabet::alphabet(std::vector<std::string> names) {
    for (auto& n : names) intern(n);
}

symbol_id alphabet::intern(const std::string& name) {
    auto it = index_.find(name);
    if (it != index_.end()) return it->second;
    if (name.empty()) throw std::invalid_argument("alphabet: empty symbol name");
    auto id = static_cast<symbol_id>(names_.size());
    names_.push_back(name);
    index_.emplace(name, id);
    return id;
}

symbol_id alphabet::id_of(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw std::invalid_argument("alphabet: unknown symbol '" + name + "'");
    return it->second;
}

const std::string& alphabet::name_of(symbol_id id) const {
    if (id >= names_.size()) throw std::invalid_argument("alphabet: symbol id out of range");
    return names_[id];
}

alphabet tuple_alphabet(const std::vector<alphabet>& tracks) {
    if (tracks.empty()) throw std::invalid_argument("tuple_alphabet: no tracks");
    std::size_t total = 1;
    for (const auto& t : tracks) {
        if (t.size() == 0) throw std::invalid_argument("tuple_alphabet: empty track alphabet");
        total *= t.size();
        if (total > max_tuple_letters) {
            std::ostringstream os;
            os << "tuple_alphabet: product alphabet would have " << total
               << "+ letters (limit " << max_tuple_letters
               << "); reduce track alphabets or project earlier";
            throw std::invalid_argument(os.str());
        }
    }
    std::vector<std::string> names;
    names.reserve(total);
    std::vector<symbol_id> digits(tracks.size(), 0);
    for (std::size_t n = 0; n < total; ++n) {
        std::string name;
        for (std::size_t t = 0; t < tracks.size(); ++t) {
            if (t) name += '/';
            name += tracks[t].name_of(digits[t]);
        }
        names.push_back(std::move(name));
        // mixed-radix increment, last track least significant
        for (std::size_t t = tracks.size(); t-- > 0;) {
            if (++digits[t] < tracks[t].size()) break;
            digits[t] = 0;
        }
    }
    return alphabet(std::move(names));
}

symbol_id tuple_pack(const std::vector<symbol_id>& parts, const std::vector<std::size_t>& sizes) {
    if (parts.size() != sizes.size()) throw std::invalid_argument("tuple_pack: arity mismatch");
    symbol_id id = 0;
    for (std::size_t t = 0; t < parts.size(); ++t) {
        if (parts[t] >= sizes[t]) throw std::invalid_argument("tuple_pack: digit out of range");
        id = static_cast<symbol_id>(id * sizes[t] + parts[t]);
    }
    return id;
}

std::vector<symbol_id> tuple_unpack(symbol_id id, const std::vector<std::size_t>& sizes) {
    std::vector<symbol_id> parts(sizes.size(), 0);
    for (std::size_t t = sizes.size(); t-- > 0;) {
        parts[t] = static_cast<symbol_id>(id % sizes[t]);
        id = static_cast<symbol_id>(id / sizes[t]);
    }
    if (id != 0) throw std::invalid_argument("tuple_unpack: id out of range");
    return parts;
}

std::string format_word(const word& w, const alphabet& alpha) {
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) out += ' ';
        out += alpha.name_of(w[i]);
    }
    if (w.empty()) out = "(empty word)";
    return out;
}

} // namespace rmcfair
