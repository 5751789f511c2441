#include "vlmc/simulate.hpp"
#include "vlmc/error.hpp"

#include <cmath>
#include <map>

namespace vlmc {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

RandomStream::RandomStream(std::uint64_t seed) : seed_(seed), gen_(splitmix64(seed)) {}

double RandomStream::uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

RandomStream RandomStream::split(std::uint64_t index) const {
    return RandomStream(splitmix64(seed_ ^ splitmix64(index + 0x632be59bd9b4e019ULL)));
}

// ---------------------------------------------------------------- chain

Simulator::Simulator(const StationaryMeasure& m, std::size_t backward_cap) : m_(m), wp_(m), cap_(backward_cap) {}

std::size_t Simulator::intern(const Word& key) const {
    if (auto it = index_.find(key); it != index_.end()) return it->second;
    const auto& mv = wp_.move(key);
    Node nd;
    nd.p0 = mv.p[0].to_double();
    nd.key = key;
    if (mv.p[0].is_zero() && mv.p[1].is_zero())
        throw Error(ErrorKind::HistoryExhausted, "history '" + key + "' has probability zero");
    nodes_.push_back(std::move(nd));
    index_.emplace(key, nodes_.size() - 1);
    return nodes_.size() - 1;
}

std::size_t Simulator::follow(std::size_t i, int a) const {
    if (nodes_[i].next[a] == npos) {
        Word key = nodes_[i].key;
        std::size_t j = intern(wp_.move(key).next[a]);
        nodes_[i].next[a] = j;
    }
    return nodes_[i].next[a];
}

ChainState Simulator::state_of(const Word& key) const {
    ChainState s;
    s.key = key;
    s.resolved = m_.tree().sufficient(key);
    if (s.resolved) s.context = m_.tree().pref_context(key);
    return s;
}

ChainState Simulator::sample_initial(RandomStream& rng) const {
    if (m_.is_dirac()) throw Error(ErrorKind::DiracState, "measure sits on finitely many sequences (" + m_.case_tag() + ")");
    const ContextTree& t = m_.tree();
    Word s;
    Number ps(1);
    while (!t.sufficient(s) && s.size() < cap_) {
        Number p1 = m_.measure_of('1' + s);
        if (rng.uniform() < (p1 / ps).to_double()) {
            s = '1' + s;
            ps = p1;
        } else {
            s = '0' + s;
            ps = m_.measure_of(s);
        }
    }
    // past the cap the history stays unresolved; the key chain still moves exactly
    return state_of(s);
}

char Simulator::step(ChainState& s, RandomStream& rng) const {
    std::size_t i = intern(s.key);
    int a = rng.uniform() < nodes_[i].p0 ? 0 : 1;
    s = state_of(nodes_[follow(i, a)].key);
    return letter(a);
}

Word Simulator::run(std::size_t n, RandomStream& rng) const {
    ChainState s = sample_initial(rng);
    std::size_t i = intern(s.key);
    Word out;
    out.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        int a = rng.uniform() < nodes_[i].p0 ? 0 : 1;
        out += letter(a);
        i = follow(i, a);
    }
    return out;
}

// ---------------------------------------------------------------- statistics

namespace {

using DDist = std::map<Word, double>;

double emit(const WordProcess& wp, Word key, const Word& u) {
    double p = 1.0;
    for (char ch : u) {
        const auto& mv = wp.move(key);
        int a = letter_index(ch);
        p *= mv.p[a].to_double();
        if (p == 0.0) return 0.0;
        key = mv.next[a];
    }
    return p;
}

DDist advance(const WordProcess& wp, const DDist& d) {
    DDist out;
    for (const auto& [k, p] : d) {
        const auto& mv = wp.move(k);
        for (int a = 0; a < 2; ++a) {
            double pa = p * mv.p[a].to_double();
            if (pa > 0.0) out[mv.next[a]] += pa;
        }
    }
    return out;
}

// Long-run variance of the indicator "w ends here": gamma_0 + 2 sum_h gamma_h.
double long_run_variance(const StationaryMeasure& m, const WordProcess& wp, const Word& w, std::size_t lags) {
    const std::size_t L = w.size();
    const double p = m.measure_of(w).to_double();
    double var = p - p * p;
    for (std::size_t h = 1; h < L && h <= lags; ++h) {
        double joint = 0.0;
        if (w.compare(h, L - h, w, 0, L - h) == 0) joint = m.measure_of(w + w.substr(L - h)).to_double();
        var += 2.0 * (joint - p * p);
    }
    Word key;
    for (char ch : w) key = wp.move(key).next[letter_index(ch)];
    DDist d{{key, p}};
    for (std::size_t h = L; h <= lags; ++h) {
        double joint = 0.0;
        for (const auto& [k, q] : d) joint += q * emit(wp, k, w);
        var += 2.0 * (joint - p * p);
        d = advance(wp, d);
    }
    return std::max(var, 0.0);
}

} // namespace

EmpiricalReport empirical_report(const StationaryMeasure& m, const Word& letters, std::size_t maxlen,
                                 double z_limit, std::size_t lags) {
    if (maxlen == 0 || maxlen > 20) throw Error(ErrorKind::BadParams, "word length for frequencies must be in 1..20");
    EmpiricalReport rep;
    rep.n_letters = letters.size();
    rep.z_limit = z_limit;
    WordProcess wp(m);
    for (std::size_t L = 1; L <= maxlen && L <= letters.size(); ++L) {
        std::vector<std::size_t> counts(std::size_t(1) << L, 0);
        std::size_t code = 0, mask = (std::size_t(1) << L) - 1;
        for (std::size_t i = 0; i < letters.size(); ++i) {
            code = ((code << 1) | std::size_t(letter_index(letters[i]))) & mask;
            if (i + 1 >= L) ++counts[code];
        }
        double windows = double(letters.size() - L + 1);
        for (std::size_t c = 0; c < counts.size(); ++c) {
            WordStat st;
            st.w = Word(L, '0');
            for (std::size_t j = 0; j < L; ++j)
                if ((c >> (L - 1 - j)) & 1) st.w[j] = '1';
            st.count = counts[c];
            st.freq = double(st.count) / windows;
            st.expected = m.measure_of(st.w).to_double();
            st.sigma = std::sqrt(long_run_variance(m, wp, st.w, lags) / windows);
            double diff = std::fabs(st.freq - st.expected);
            st.ok = st.sigma > 0.0 ? diff <= z_limit * st.sigma : diff <= 1e-12;
            rep.all_ok = rep.all_ok && st.ok;
            rep.words.push_back(std::move(st));
        }
    }
    return rep;
}

void add_occurrence_check(EmpiricalReport& rep, const StationaryMeasure& m, const Word& w,
                          const std::vector<Number>& law, std::size_t replicas, RandomStream& rng) {
    if (law.empty() || replicas == 0) return;
    const std::size_t nmax = law.size() - 1;
    Simulator sim(m);
    std::vector<std::size_t> hits(nmax + 1, 0);
    for (std::size_t r = 0; r < replicas; ++r) {
        Word x = sim.run(nmax, rng);
        auto pos = x.find(w);
        if (pos != Word::npos) ++hits[pos + w.size()];
    }
    rep.occurrence_word = w;
    rep.occurrence_replicas = replicas;
    for (std::size_t n = 0; n <= nmax; ++n) {
        OccurrenceStat st;
        st.n = n;
        st.empirical = double(hits[n]) / double(replicas);
        st.expected = law[n].to_double();
        st.sigma = std::sqrt(st.expected * (1.0 - st.expected) / double(replicas));
        double diff = std::fabs(st.empirical - st.expected);
        st.ok = st.sigma > 0.0 ? diff <= rep.z_limit * st.sigma : diff <= 1e-12;
        rep.all_ok = rep.all_ok && st.ok;
        rep.occurrence.push_back(st);
    }
}

nlohmann::json EmpiricalReport::to_json() const {
    nlohmann::json j;
    j["n_letters"] = n_letters;
    j["z_limit"] = z_limit;
    j["all_ok"] = all_ok;
    j["words"] = nlohmann::json::array();
    for (const auto& s : words)
        j["words"].push_back({{"word", s.w},
                              {"count", s.count},
                              {"freq", s.freq},
                              {"expected", s.expected},
                              {"sigma", s.sigma},
                              {"ok", s.ok}});
    if (!occurrence.empty()) {
        nlohmann::json o;
        o["word"] = occurrence_word;
        o["replicas"] = occurrence_replicas;
        o["pmf"] = nlohmann::json::array();
        for (const auto& s : occurrence)
            o["pmf"].push_back({{"n", s.n},
                                {"empirical", s.empirical},
                                {"expected", s.expected},
                                {"sigma", s.sigma},
                                {"ok", s.ok}});
        j["occurrence"] = o;
    }
    return j;
}

} // namespace vlmc
