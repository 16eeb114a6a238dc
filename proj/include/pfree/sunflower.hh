#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

namespace pfree {

template <typename T>
struct Sunflower {
    std::vector<std::size_t> members;   // indices into the family
    std::vector<T> core;                // sorted
};

namespace detail {

template <typename T>
std::optional<Sunflower<T>> sunflower_rec(const std::vector<std::vector<T>> &sets,
                                          const std::vector<std::size_t> &ids, std::size_t a)
{
    if (ids.size() < a)
        return std::nullopt;
    // greedy maximal pairwise-disjoint subfamily, in family order
    std::set<T> used;
    std::vector<std::size_t> disjoint;
    for (std::size_t i = 0; i < sets.size(); ++i) {
        bool clash = std::any_of(sets[i].begin(), sets[i].end(), [&](const T &x) { return used.count(x); });
        if (clash)
            continue;
        used.insert(sets[i].begin(), sets[i].end());
        disjoint.push_back(i);
    }
    if (disjoint.size() >= a) {
        Sunflower<T> s;
        for (auto i : disjoint)
            s.members.push_back(ids[i]);
        return s;
    }
    std::map<T, std::size_t> freq;
    for (const auto &s : sets)
        for (const auto &x : s)
            ++freq[x];
    if (freq.empty())
        return std::nullopt;
    auto best = freq.begin();
    for (auto it = freq.begin(); it != freq.end(); ++it)
        if (it->second > best->second)
            best = it;
    if (best->second < a)
        return std::nullopt;
    const T x = best->first;
    std::vector<std::vector<T>> sub;
    std::vector<std::size_t> sub_ids;
    for (std::size_t i = 0; i < sets.size(); ++i)
        if (std::binary_search(sets[i].begin(), sets[i].end(), x)) {
            std::vector<T> rest;
            for (const auto &y : sets[i])
                if (y != x)
                    rest.push_back(y);
            sub.push_back(std::move(rest));
            sub_ids.push_back(ids[i]);
        }
    auto found = sunflower_rec(sub, sub_ids, a);
    if (found) {
        found->core.insert(std::lower_bound(found->core.begin(), found->core.end(), x), x);
    }
    return found;
}

}

// Greedy disjoint subfamily, else recurse on the most frequent element
// (ties to the smallest). Members must be sorted vectors.
template <typename T>
std::optional<Sunflower<T>> find_sunflower(const std::vector<std::vector<T>> &family, std::size_t a)
{
    if (a < 1)
        throw std::invalid_argument("sunflower size must be at least 1");
    for (const auto &s : family)
        if (!std::is_sorted(s.begin(), s.end()))
            throw std::invalid_argument("sunflower family members must be sorted");
    std::vector<std::size_t> ids(family.size());
    for (std::size_t i = 0; i < ids.size(); ++i)
        ids[i] = i;
    return detail::sunflower_rec(family, ids, a);
}

}
