#include "rmcfair/relation.hpp"

#include <algorithm>
#include <stdexcept>

namespace rmcfair {

namespace {

std::vector<std::size_t> sizes_of(const std::vector<alphabet>& tracks) {
    std::vector<std::size_t> s;
    s.reserve(tracks.size());
    for (const auto& a : tracks) s.push_back(a.size());
    return s;
}

} // namespace

relation::relation(std::vector<alphabet> tracks, nfa carrier)
    : track_alphabets_(std::move(tracks)), carrier_(std::move(carrier)) {
    if (track_alphabets_.empty()) throw std::invalid_argument("relation: need at least one track");
    if (carrier_.alpha() != tuple_alphabet(track_alphabets_))
        throw std::invalid_argument("relation: carrier alphabet is not the tuple of the tracks");
}

bool relation::contains(const std::vector<word>& tuple) const {
    return membership(carrier_, zip_tuple(carrier_.alpha(), track_alphabets_, tuple));
}

word zip_tuple(const alphabet& tuple_alpha, const std::vector<alphabet>& tracks,
               const std::vector<word>& parts) {
    if (parts.size() != tracks.size())
        throw std::invalid_argument("zip_tuple: tuple arity mismatch");
    const std::size_t len = parts.empty() ? 0 : parts[0].size();
    for (const auto& p : parts)
        if (p.size() != len) throw std::invalid_argument("zip_tuple: tracks differ in length");
    auto sizes = sizes_of(tracks);
    word out(len);
    std::vector<symbol_id> column(tracks.size());
    for (std::size_t i = 0; i < len; ++i) {
        for (std::size_t t = 0; t < tracks.size(); ++t) column[t] = parts[t][i];
        out[i] = tuple_pack(column, sizes);
        if (out[i] >= tuple_alpha.size())
            throw std::invalid_argument("zip_tuple: packed symbol out of range");
    }
    return out;
}

std::vector<word> unzip_tuple(const alphabet& tuple_alpha, const std::vector<alphabet>& tracks,
                              const word& w) {
    auto sizes = sizes_of(tracks);
    std::vector<word> parts(tracks.size(), word(w.size()));
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] >= tuple_alpha.size())
            throw std::invalid_argument("unzip_tuple: symbol out of range");
        auto column = tuple_unpack(w[i], sizes);
        for (std::size_t t = 0; t < tracks.size(); ++t) parts[t][i] = column[t];
    }
    return parts;
}

relation identity_relation(const alphabet& alpha) {
    std::vector<alphabet> tracks{alpha, alpha};
    alphabet tup = tuple_alphabet(tracks);
    auto sizes = sizes_of(tracks);
    std::vector<transition> ts;
    for (symbol_id a = 0; a < alpha.size(); ++a)
        ts.push_back({0, tuple_pack({a, a}, sizes), 0});
    return relation(std::move(tracks), nfa(std::move(tup), 1, std::move(ts), {0}, {0}));
}

relation as_relation(const nfa& a) {
    // A one-track tuple alphabet has the same symbol names, so the carrier
    // can be reused as is.
    return relation({a.alpha()}, a);
}

relation convolve(const nfa& a, const nfa& b) {
    relation ra = as_relation(a);
    relation rb = as_relation(b);
    std::vector<alphabet> tracks{a.alpha(), b.alpha()};
    return intersect(cylindrify(ra, tracks, {0}), cylindrify(rb, tracks, {1}));
}

relation cylindrify(const relation& r, const std::vector<alphabet>& target,
                    const std::vector<std::size_t>& where) {
    if (where.size() != r.tracks())
        throw std::invalid_argument("cylindrify: placement arity mismatch");
    std::vector<int> source_of(target.size(), -1); // target track -> r track, -1 free
    for (std::size_t i = 0; i < where.size(); ++i) {
        if (where[i] >= target.size())
            throw std::invalid_argument("cylindrify: placement out of range");
        if (source_of[where[i]] != -1)
            throw std::invalid_argument("cylindrify: placement not injective");
        if (target[where[i]] != r.track_alphabet(i))
            throw std::invalid_argument("cylindrify: track alphabet mismatch");
        source_of[where[i]] = static_cast<int>(i);
    }
    alphabet tup = tuple_alphabet(target);
    auto target_sizes = sizes_of(target);
    auto source_sizes = sizes_of(r.track_alphabets());
    // Group target letters by the r-letter they restrict to.
    std::vector<std::vector<symbol_id>> expand(r.carrier().alpha().size());
    std::vector<symbol_id> column(r.tracks());
    for (symbol_id t = 0; t < tup.size(); ++t) {
        auto parts = tuple_unpack(t, target_sizes);
        for (std::size_t i = 0; i < where.size(); ++i) column[i] = parts[where[i]];
        expand[tuple_pack(column, source_sizes)].push_back(t);
    }
    std::vector<transition> ts;
    for (const auto& tr : r.carrier().transitions())
        for (symbol_id t : expand[tr.sym]) ts.push_back({tr.from, t, tr.to});
    return relation(target, nfa(std::move(tup), r.carrier().num_states(), std::move(ts),
                                r.carrier().initial(), r.carrier().finals()));
}

relation project(const relation& r, const std::vector<std::size_t>& keep) {
    if (keep.empty()) throw std::invalid_argument("project: need at least one track");
    std::vector<alphabet> tracks;
    for (auto i : keep) {
        if (i >= r.tracks()) throw std::invalid_argument("project: track out of range");
        tracks.push_back(r.track_alphabet(i));
    }
    alphabet tup = tuple_alphabet(tracks);
    auto source_sizes = sizes_of(r.track_alphabets());
    auto kept_sizes = sizes_of(tracks);
    std::vector<symbol_id> remap(r.carrier().alpha().size());
    std::vector<symbol_id> column(keep.size());
    for (symbol_id s = 0; s < r.carrier().alpha().size(); ++s) {
        auto parts = tuple_unpack(s, source_sizes);
        for (std::size_t i = 0; i < keep.size(); ++i) column[i] = parts[keep[i]];
        remap[s] = tuple_pack(column, kept_sizes);
    }
    std::vector<transition> ts;
    for (const auto& tr : r.carrier().transitions()) ts.push_back({tr.from, remap[tr.sym], tr.to});
    return relation(std::move(tracks), nfa(std::move(tup), r.carrier().num_states(), std::move(ts),
                                           r.carrier().initial(), r.carrier().finals()));
}

relation permute(const relation& r, const std::vector<std::size_t>& perm) {
    if (perm.size() != r.tracks()) throw std::invalid_argument("permute: arity mismatch");
    std::vector<char> seen(r.tracks(), 0);
    for (auto i : perm) {
        if (i >= r.tracks() || seen[i]) throw std::invalid_argument("permute: not a permutation");
        seen[i] = 1;
    }
    return project(r, perm);
}

relation inverse(const relation& r) {
    if (r.tracks() != 2) throw std::invalid_argument("inverse: binary relations only");
    return permute(r, {1, 0});
}

namespace {

void check_same_signature(const relation& r, const relation& s, const char* op) {
    if (r.tracks() != s.tracks())
        throw std::invalid_argument(std::string(op) + ": track count mismatch");
    for (std::size_t i = 0; i < r.tracks(); ++i)
        if (r.track_alphabet(i) != s.track_alphabet(i))
            throw std::invalid_argument(std::string(op) + ": track alphabet mismatch");
}

} // namespace

relation intersect(const relation& r, const relation& s) {
    check_same_signature(r, s, "intersect");
    return relation(r.track_alphabets(), product_and(r.carrier(), s.carrier()));
}

relation unite(const relation& r, const relation& s) {
    check_same_signature(r, s, "unite");
    return relation(r.track_alphabets(), product_or(r.carrier(), s.carrier()));
}

relation compose(const relation& r, const relation& s) {
    if (r.tracks() != 2 || s.tracks() != 2)
        throw std::invalid_argument("compose: binary relations only");
    if (r.track_alphabet(1) != s.track_alphabet(0))
        throw std::invalid_argument("compose: middle track alphabet mismatch");
    std::vector<alphabet> three{r.track_alphabet(0), r.track_alphabet(1), s.track_alphabet(1)};
    relation wide = intersect(cylindrify(r, three, {0, 1}), cylindrify(s, three, {1, 2}));
    return trim(project(wide, {0, 2}));
}

nfa post_image(const relation& r, const nfa& x) {
    if (r.tracks() != 2) throw std::invalid_argument("post_image: binary relations only");
    if (r.track_alphabet(0) != x.alpha())
        throw std::invalid_argument("post_image: language alphabet mismatch");
    relation lifted = cylindrify(as_relation(x), r.track_alphabets(), {0});
    return trim(project(intersect(r, lifted), {1}).carrier());
}

nfa pre_image(const relation& r, const nfa& x) {
    return post_image(inverse(r), x);
}

relation trim(const relation& r) { return relation(r.track_alphabets(), trim(r.carrier())); }

} // namespace rmcfair
