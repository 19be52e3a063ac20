#include <rlab/census.hpp>
#include <rlab/error.hpp>
#include <rlab/io.hpp>

#include <openssl/evp.h>

#include <algorithm>
#include <filesystem>
#include <numeric>
#include <sstream>
#include <unordered_set>

using std::vector;

namespace rlab
{
    auto tiny_from_tournament(const Tournament & t) -> TinyTournament
    {
        require(t.n() <= census_code_limit, ErrorKind::TooLarge, "tournament too large for a census code");
        TinyTournament tiny;
        tiny.n = t.n();
        for (int u = 0; u < t.n(); ++u)
            t.out(u).for_each([&](int v) { tiny.out[u] |= 1u << v; });
        return tiny;
    }

    auto tiny_to_tournament(const TinyTournament & t) -> Tournament
    {
        Tournament result(t.n);
        for (int u = 0; u < t.n; ++u)
            for (int v = u + 1; v < t.n; ++v)
                if (t.has_edge(v, u))
                    result.orient(v, u);
        return result;
    }

    auto tiny_to_host(const TinyTournament & t) -> SmallHost
    {
        SmallHost host{t.n, vector<std::uint64_t>(t.n, 0), vector<std::uint64_t>(t.n, 0)};
        for (int u = 0; u < t.n; ++u)
            for (int v = 0; v < t.n; ++v)
                if (t.has_edge(u, v)) {
                    host.out[u] |= std::uint64_t{1} << v;
                    host.in[v] |= std::uint64_t{1} << u;
                }
        return host;
    }

    auto code_of(const TinyTournament & t, const int * perm) -> TournamentCode
    {
        TournamentCode code = 0;
        for (int p = 0; p < t.n; ++p)
            for (int q = p + 1; q < t.n; ++q)
                code = (code << 1) | (t.has_edge(perm[p], perm[q]) ? 1 : 0);
        return code;
    }

    auto tiny_from_code(int n, TournamentCode code) -> TinyTournament
    {
        TinyTournament t;
        t.n = n;
        int bit = n * (n - 1) / 2;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                --bit;
                if ((code >> bit) & 1)
                    t.out[p] |= 1u << q;
                else
                    t.out[q] |= 1u << p;
            }
        return t;
    }

    namespace
    {
        using Cells = std::array<int, census_code_limit>;   // cell index per vertex, cells numbered in order

        // Split cells by out-degree into every cell until stable; returns the cell count.
        auto refine(const TinyTournament & t, Cells & cell, int cells) -> int
        {
            int n = t.n;
            while (true) {
                std::array<std::uint32_t, census_code_limit> members{};
                for (int v = 0; v < n; ++v)
                    members[cell[v]] |= 1u << v;
                // signature: own cell, then out-degree into cells 0..cells-1; 4 bits per entry is enough for n <= 11
                std::array<std::pair<std::array<std::uint8_t, census_code_limit + 1>, int>, census_code_limit> sig;
                for (int v = 0; v < n; ++v) {
                    sig[v].first.fill(0);
                    sig[v].first[0] = std::uint8_t(cell[v]);
                    for (int c = 0; c < cells; ++c)
                        sig[v].first[c + 1] = std::uint8_t(std::popcount(t.out[v] & members[c]));
                    sig[v].second = v;
                }
                std::sort(sig.begin(), sig.begin() + n);
                int next = 0;
                for (int i = 0; i < n; ++i) {
                    if (i > 0 && sig[i].first != sig[i - 1].first)
                        ++next;
                    cell[sig[i].second] = next;
                }
                int refined = n ? next + 1 : 0;
                if (refined == cells)
                    return cells;
                cells = refined;
            }
        }

        auto search_leaves(const TinyTournament & t, Cells cell, int cells, TournamentCode & best, bool & have) -> void
        {
            cells = refine(t, cell, cells);
            int n = t.n;
            if (cells == n) {
                int perm[census_code_limit];
                for (int v = 0; v < n; ++v)
                    perm[cell[v]] = v;
                auto code = code_of(t, perm);
                if (! have || code < best) {
                    best = code;
                    have = true;
                }
                return;
            }
            // first cell (in order) holding more than one vertex
            std::array<int, census_code_limit> count{};
            for (int v = 0; v < n; ++v)
                ++count[cell[v]];
            int target = 0;
            while (count[target] == 1)
                ++target;
            for (int v = 0; v < n; ++v) {
                if (cell[v] != target)
                    continue;
                Cells split;
                for (int u = 0; u < n; ++u)
                    split[u] = cell[u] < target ? cell[u] : (cell[u] > target || u != v ? cell[u] + 1 : cell[u]);
                search_leaves(t, split, cells + 1, best, have);
            }
        }
    }

    auto canonical_code(const TinyTournament & t) -> TournamentCode
    {
        Cells cell{};
        TournamentCode best = 0;
        bool have = false;
        search_leaves(t, cell, t.n ? 1 : 0, best, have);
        return best;
    }

    auto census_extend(const TournamentCensus & smaller) -> TournamentCensus
    {
        int n = smaller.n + 1;
        require(n <= census_code_limit, ErrorKind::TooLarge, "census codes hold at most 11 vertices");
        std::unordered_set<TournamentCode> seen;
        for (auto code : smaller.codes) {
            auto base = tiny_from_code(n - 1, code);
            base.n = n;
            for (std::uint32_t mask = 0; mask < (1u << (n - 1)); ++mask) {
                auto t = base;
                t.out[n - 1] = mask;
                for (int u = 0; u < n - 1; ++u)
                    if (! ((mask >> u) & 1))
                        t.out[u] |= 1u << (n - 1);
                seen.insert(canonical_code(t));
            }
        }
        TournamentCensus result{n, vector<TournamentCode>(seen.begin(), seen.end())};
        std::sort(result.codes.begin(), result.codes.end());
        return result;
    }

    auto enumerate_tournaments(int n, int cap) -> TournamentCensus
    {
        require(n >= 1, ErrorKind::InfeasibleParams, "census needs n >= 1");
        require(n <= cap && n <= census_code_limit, ErrorKind::TooLarge,
                "census for n = " + std::to_string(n) + " exceeds the cap " + std::to_string(std::min(cap, census_code_limit)));
        TournamentCensus census{1, {0}};
        while (census.n < n)
            census = census_extend(census);
        return census;
    }

    namespace
    {
        auto sha256_hex(const std::string & text) -> std::string
        {
            unsigned char digest[EVP_MAX_MD_SIZE];
            unsigned int length = 0;
            EVP_Digest(text.data(), text.size(), digest, &length, EVP_sha256(), nullptr);
            static const char * hex = "0123456789abcdef";
            std::string out;
            for (unsigned int i = 0; i < length; ++i) {
                out += hex[digest[i] >> 4];
                out += hex[digest[i] & 15];
            }
            return out;
        }

        auto code_hex(int n, TournamentCode code) -> std::string
        {
            return tournament_hex(tiny_to_tournament(tiny_from_code(n, code)));
        }
    }

    auto write_census(const TournamentCensus & census) -> std::string
    {
        std::ostringstream body;
        body << "CENSUS 1\n" << census.n << "\n" << census.codes.size() << "\n";
        for (auto code : census.codes)
            body << code_hex(census.n, code) << "\n";
        auto text = body.str();
        return text + "sha256 " + sha256_hex(text) + "\n";
    }

    auto read_census(const std::string & text) -> TournamentCensus
    {
        auto hash_at = text.rfind("sha256 ");
        require(hash_at != std::string::npos, ErrorKind::ParseError, "census file has no integrity line");
        auto body = text.substr(0, hash_at);
        auto stored = text.substr(hash_at + 7);
        while (! stored.empty() && stored.back() == '\n')
            stored.pop_back();
        require(stored == sha256_hex(body), ErrorKind::ParseError, "census integrity hash mismatch");

        std::istringstream in(body);
        std::string line;
        std::getline(in, line);
        require(line == "CENSUS 1", ErrorKind::ParseError, "missing CENSUS 1 header");
        TournamentCensus census;
        std::size_t count = 0;
        require(bool(in >> census.n >> count), ErrorKind::ParseError, "bad census header");
        require(census.n >= 1 && census.n <= census_code_limit, ErrorKind::ParseError, "census n out of range");
        std::string hex;
        while (in >> hex) {
            auto t = tiny_from_tournament(tournament_from_hex(census.n, hex));
            int identity[census_code_limit];
            std::iota(identity, identity + census.n, 0);
            census.codes.push_back(code_of(t, identity));
        }
        require(census.codes.size() == count, ErrorKind::ParseError, "census count line does not match the body");
        return census;
    }

    auto load_or_build_census(int n, const std::string & cache_dir, int cap) -> TournamentCensus
    {
        namespace fs = std::filesystem;
        fs::path path = fs::path(cache_dir) / ("census-" + std::to_string(n) + ".txt");
        if (fs::exists(path)) {
            try {
                auto census = read_census(read_file(path.string()));
                if (census.n == n)
                    return census;
            }
            catch (const Error &) {
                // damaged cache: rebuild below
            }
        }
        TournamentCensus census;
        if (n >= 2) {
            auto smaller = load_or_build_census(n - 1, cache_dir, cap);
            require(n <= cap, ErrorKind::TooLarge, "census for n = " + std::to_string(n) + " exceeds the cap");
            census = census_extend(smaller);
        }
        else
            census = enumerate_tournaments(n, cap);
        fs::create_directories(cache_dir);
        write_file(path.string(), write_census(census));
        return census;
    }
}
