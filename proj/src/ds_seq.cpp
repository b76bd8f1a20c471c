#include "facelab/ds_seq.h"

#include "facelab/exact_geom.h"

#include <algorithm>
#include <array>
#include <limits>
#include <map>
#include <string>

namespace facelab {

namespace {

// Greedy alternation of the pair {a, b} within elements[0..end]: positions
// of the first element of each run of the pair-restricted sequence.
std::vector<std::size_t> alternation_positions(const std::vector<Symbol>& e, Symbol a, Symbol b,
                                               std::size_t end, std::size_t want) {
    std::vector<std::size_t> pos;
    Symbol last = 0;
    bool any = false;
    for (std::size_t i = 0; i <= end && pos.size() < want; ++i) {
        if (e[i] != a && e[i] != b) continue;
        if (!any || e[i] != last) pos.push_back(i + 1);
        last = e[i];
        any = true;
    }
    return pos;
}

}  // namespace

DsCheck is_ds(const SymbolSequence& seq, int s) {
    if (s < 1) throw InputError("DS order must be at least 1");
    const auto& e = seq.elements;
    DsCheck out;
    for (std::size_t i = 0; i + 1 < e.size(); ++i) {
        if (e[i] == e[i + 1]) {
            out.valid = false;
            out.violation = {i + 1, i + 2};
            return out;
        }
    }
    if (seq.circular && e.size() > 1 && e.front() == e.back()) {
        out.valid = false;
        out.violation = {e.size(), 1};
        return out;
    }

    std::map<Symbol, int> dense;
    for (Symbol x : e) dense.emplace(x, 0);
    int n = 0;
    std::vector<Symbol> symbol_of;
    for (auto& [sym, idx] : dense) {
        idx = n++;
        symbol_of.push_back(sym);
    }
    // Per unordered pair: the symbol of the current run and the run count.
    std::vector<int> last(static_cast<std::size_t>(n) * n, -1);
    std::vector<int> runs(static_cast<std::size_t>(n) * n, 0);
    std::vector<int> seen;
    std::vector<char> is_seen(n, 0);
    const int limit = s + 2;
    for (std::size_t i = 0; i < e.size(); ++i) {
        int x = dense[e[i]];
        if (!is_seen[x]) {
            for (int y : seen) {
                auto cell = static_cast<std::size_t>(std::min(x, y)) * n + std::max(x, y);
                last[cell] = y;
                runs[cell] = 1;
            }
            is_seen[x] = 1;
            seen.push_back(x);
        }
        for (int y : seen) {
            if (y == x) continue;
            auto cell = static_cast<std::size_t>(std::min(x, y)) * n + std::max(x, y);
            if (last[cell] == x) continue;
            last[cell] = x;
            if (++runs[cell] >= limit) {
                out.valid = false;
                out.violation = alternation_positions(e, e[i], symbol_of[y], i,
                                                      static_cast<std::size_t>(limit));
                return out;
            }
        }
    }
    return out;
}

SymbolSequence restrict_to(const SymbolSequence& seq, const std::set<Symbol>& A) {
    SymbolSequence out;
    out.circular = seq.circular;
    for (Symbol x : seq.elements) {
        if (!A.count(x)) continue;
        if (!out.elements.empty() && out.elements.back() == x) continue;
        out.elements.push_back(x);
    }
    if (seq.circular)
        while (out.elements.size() > 1 && out.elements.front() == out.elements.back())
            out.elements.pop_back();
    return out;
}

std::vector<int> active_profile(const SymbolSequence& seq) {
    const auto& e = seq.elements;
    std::map<Symbol, std::pair<std::size_t, std::size_t>> span;
    for (std::size_t i = 0; i < e.size(); ++i) {
        auto [it, fresh] = span.emplace(e[i], std::make_pair(i, i));
        if (!fresh) it->second.second = i;
    }
    std::vector<int> diff(e.size() + 1, 0);
    for (const auto& [sym, fl] : span) {
        if (fl.first == fl.second) continue;
        ++diff[fl.first];
        --diff[fl.second];
    }
    std::vector<int> v(e.size());
    int run = 0;
    for (std::size_t j = 0; j < e.size(); ++j) v[j] = run += diff[j];
    return v;
}

long lambda_brute(int n, int s, long node_budget) {
    constexpr int kMaxN = 5;
    if (n < 1 || n > kMaxN || s < 1 || s > 3)
        throw InputError("lambda_brute supports 1 <= n <= 5 and 1 <= s <= 3");
    struct State {
        std::array<std::array<int, kMaxN>, kMaxN> last;
        std::array<std::array<int, kMaxN>, kMaxN> runs;
    };
    long nodes = 0;
    long best = 0;
    std::vector<int> seq;
    // Symbols are introduced in increasing order, which removes relabelings.
    auto dfs = [&](auto&& self, const State& st, int used) -> void {
        if (++nodes > node_budget)
            throw InputError("lambda_brute node budget of " + std::to_string(node_budget) +
                             " exceeded");
        best = std::max(best, static_cast<long>(seq.size()));
        int top = std::min(used + 1, n);
        for (int x = 0; x < top; ++x) {
            if (!seq.empty() && seq.back() == x) continue;
            State next = st;
            bool ok = true;
            for (int y = 0; y < used && ok; ++y) {
                if (y == x) continue;
                int a = std::min(x, y), b = std::max(x, y);
                if (x == used) {
                    next.last[a][b] = y;
                    next.runs[a][b] = 1;
                }
                if (next.last[a][b] != x) {
                    next.last[a][b] = x;
                    if (++next.runs[a][b] >= s + 2) ok = false;
                }
            }
            if (!ok) continue;
            seq.push_back(x);
            self(self, next, std::max(used, x + 1));
            seq.pop_back();
        }
    };
    State root{};
    dfs(dfs, root, 0);
    return best;
}

BlockDecomposition block_decompose(const SymbolSequence& seq, const Partition& part) {
    if (seq.circular) throw InputError("block_decompose needs a linear sequence");
    const auto& e = seq.elements;
    for (std::size_t i = 0; i + 1 < e.size(); ++i)
        if (e[i] == e[i + 1]) throw InputError("block_decompose needs a run-collapsed sequence");

    std::map<Symbol, int> class_of;
    for (int c = 0; c < static_cast<int>(part.classes.size()); ++c)
        for (Symbol x : part.classes[c])
            if (!class_of.emplace(x, c).second)
                throw InputError("partition classes overlap on symbol " + std::to_string(x));
    for (Symbol x : e)
        if (!class_of.count(x))
            throw InputError("partition misses symbol " + std::to_string(x));

    BlockDecomposition out;
    std::vector<char> cut_after(e.size(), 0);
    for (int c = 0; c < static_cast<int>(part.classes.size()); ++c) {
        // Walk S restricted to this class; a run ends at the last position
        // before the next different class member.
        std::size_t prev = e.size();
        int length = 0;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (class_of[e[i]] != c) continue;
            if (prev == e.size() || e[prev] != e[i]) {
                if (prev != e.size()) cut_after[prev] = 1;
                ++length;
            }
            prev = i;
        }
        if (length == 0) continue;
        out.C += length;
        ++out.k;
    }
    for (std::size_t i = 0; i < e.size(); ++i)
        if (cut_after[i]) out.delimiter_positions.push_back(i + 1);

    if (!e.empty()) {
        out.subsequences.emplace_back();
        for (std::size_t i = 0; i < e.size(); ++i) {
            out.subsequences.back().push_back(e[i]);
            if (cut_after[i]) out.subsequences.emplace_back();
        }
    }

    const std::size_t m = out.subsequences.size();
    const std::size_t k = static_cast<std::size_t>(std::max(out.k, 1));
    const std::size_t nblocks = m == 0 ? 0 : std::max<std::size_t>(1, m / k);
    for (std::size_t b = 0; b < nblocks; ++b) {
        std::size_t from = b * k;
        std::size_t to = b + 1 == nblocks ? m : from + k;
        std::vector<Symbol> block;
        for (std::size_t j = from; j < to; ++j)
            block.insert(block.end(), out.subsequences[j].begin(), out.subsequences[j].end());
        out.blocks.push_back(std::move(block));
    }
    return out;
}

Partition dsa_partition(const SymbolSequence& seq, int k) {
    const auto& e = seq.elements;
    std::map<Symbol, std::pair<std::size_t, std::size_t>> span;
    for (std::size_t i = 0; i < e.size(); ++i) {
        auto [it, fresh] = span.emplace(e[i], std::make_pair(i, i));
        if (!fresh) it->second.second = i;
    }
    for (const auto& [sym, fl] : span)
        if (fl.first == fl.second)
            throw InputError("symbol " + std::to_string(sym) +
                             " occurs once; filter singletons first");
    auto profile = active_profile(seq);
    int peak = profile.empty() ? 0 : *std::max_element(profile.begin(), profile.end());
    if (k < peak)
        throw InputError("k = " + std::to_string(k) + " is below the maximum active count " +
                         std::to_string(peak));

    std::vector<std::set<Symbol>> classes(static_cast<std::size_t>(std::max(k, 0)));
    std::set<int> free_slots;
    for (int i = 0; i < k; ++i) free_slots.insert(i);
    std::map<Symbol, int> slot;
    for (std::size_t i = 0; i < e.size(); ++i) {
        Symbol a = e[i];
        const auto& fl = span.at(a);
        if (fl.first == i) {
            if (free_slots.empty()) throw InvariantError("greedy slot allocation stalled");
            int t = *free_slots.begin();
            free_slots.erase(free_slots.begin());
            classes[t].insert(a);
            slot[a] = t;
        } else if (fl.second == i) {
            free_slots.insert(slot.at(a));
        }
    }
    Partition out;
    for (auto& c : classes)
        if (!c.empty()) out.classes.push_back(std::move(c));
    return out;
}

SymbolSequence drop_singletons(const SymbolSequence& seq) {
    // Collapsing runs can strand new singletons, so repeat until none remain.
    SymbolSequence cur = seq;
    for (;;) {
        std::map<Symbol, int> count;
        for (Symbol x : cur.elements) ++count[x];
        std::set<Symbol> keep;
        for (const auto& [x, c] : count)
            if (c >= 2) keep.insert(x);
        if (keep.size() == count.size()) return cur;
        cur = restrict_to(cur, keep);
    }
}

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t ackermann(int i, std::uint64_t j) {
    // A(i, j) >= 2^j for every i >= 1, so large j saturates immediately.
    if (j >= 63) return kSaturated;
    if (i == 1) return std::uint64_t{1} << j;
    if (j == 1) return ackermann(i - 1, 2);
    std::uint64_t inner = ackermann(i, j - 1);
    if (inner == kSaturated) return kSaturated;
    return ackermann(i - 1, inner);
}

}  // namespace

int inverse_ackermann(std::uint64_t n) {
    if (n < 1) throw InputError("inverse_ackermann needs n >= 1");
    for (int k = 1;; ++k)
        if (ackermann(k, static_cast<std::uint64_t>(k)) >= n) return k;
}

double lambda3_hat(std::uint64_t n) {
    if (n == 0) return 0.0;
    return static_cast<double>(n) * inverse_ackermann(n);
}

}  // namespace facelab
