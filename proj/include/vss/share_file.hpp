// share_file.hpp - canonical line-oriented share file format
#ifndef VSS_SHARE_FILE_HPP
#define VSS_SHARE_FILE_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "vss/access.hpp"
#include "vss/bits.hpp"
#include "vss/control.hpp"
#include "vss/dealer.hpp"
#include "vss/sharing.hpp"

namespace vss {

// Parsed form of a share file:
//   vss v1
//   scheme=<shamir|kgh> p=<p> t=<t> n=<n> v=<v> l=<l> m=<m> strategy=<s> f=<name>
//   share id=<i> bits=<payload, MSB-first, width l+m>   (n lines, ids 1..n)
// Every line ends in '\n'; no trailing whitespace. KGH files carry p=0 and
// t=n. parse and serialize are exact inverses on canonical input.
struct ShareFile {
    std::string scheme;  // "shamir" | "kgh"
    std::uint32_t p = 0;
    int t = 0;
    int n = 0;
    int v = 0;
    int l = 0;
    int m = 0;
    std::string strategy;  // "direct" | "constrained"
    std::string f_name;
    std::vector<ExtendedShare> shares;
};

namespace detail {

inline std::uint64_t parse_canonical_uint(std::string_view text, std::uint64_t max,
                                          const char* what) {
    if (text.empty() || text.size() > 10) throw FormatError(std::string("share file: bad ") + what);
    if (text.size() > 1 && text[0] == '0')
        throw FormatError(std::string("share file: non-canonical ") + what);
    std::uint64_t value = 0;
    for (char c : text) {
        if (c < '0' || c > '9') throw FormatError(std::string("share file: bad ") + what);
        value = value * 10 + static_cast<std::uint64_t>(c - '0');
    }
    if (value > max) throw FormatError(std::string("share file: out-of-range ") + what);
    return value;
}

// Consumes "<key>=<token>" at the head of `line`, plus the separating space
// unless the token is the last on the line.
inline std::string_view take_field(std::string_view& line, std::string_view key, bool last,
                                   const char* what) {
    if (line.substr(0, key.size()) != key || line.size() <= key.size() ||
        line[key.size()] != '=')
        throw FormatError(std::string("share file: expected ") + what);
    line.remove_prefix(key.size() + 1);
    std::size_t end = last ? line.size() : line.find(' ');
    if (end == 0 || end == std::string_view::npos)
        throw FormatError(std::string("share file: bad ") + what);
    std::string_view token = line.substr(0, end);
    line.remove_prefix(last ? end : end + 1);
    return token;
}

}  // namespace detail

inline std::string serialize_share_file(const ShareFile& file) {
    std::string out = "vss v1\n";
    out += "scheme=" + file.scheme + " p=" + std::to_string(file.p) +
           " t=" + std::to_string(file.t) + " n=" + std::to_string(file.n) +
           " v=" + std::to_string(file.v) + " l=" + std::to_string(file.l) +
           " m=" + std::to_string(file.m) + " strategy=" + file.strategy + " f=" + file.f_name +
           "\n";
    for (const ExtendedShare& s : file.shares)
        out += "share id=" + std::to_string(s.owner) + " bits=" + s.payload().str() + "\n";
    return out;
}

inline ShareFile parse_share_file(std::string_view text) {
    std::size_t pos = 0;
    auto next_line = [&]() -> std::string_view {
        if (pos >= text.size()) throw FormatError("share file: unexpected end of input");
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) throw FormatError("share file: missing final newline");
        std::string_view line = text.substr(pos, nl - pos);
        pos = nl + 1;
        return line;
    };

    if (next_line() != "vss v1") throw FormatError("share file: bad magic line");

    ShareFile file;
    std::string_view header = next_line();
    file.scheme = detail::take_field(header, "scheme", false, "scheme");
    if (file.scheme != "shamir" && file.scheme != "kgh")
        throw FormatError("share file: unknown scheme");
    file.p = static_cast<std::uint32_t>(
        detail::parse_canonical_uint(detail::take_field(header, "p", false, "p"), (1u << 31) - 1, "p"));
    file.t = static_cast<int>(
        detail::parse_canonical_uint(detail::take_field(header, "t", false, "t"), 1000, "t"));
    file.n = static_cast<int>(
        detail::parse_canonical_uint(detail::take_field(header, "n", false, "n"), 1000, "n"));
    file.v = static_cast<int>(
        detail::parse_canonical_uint(detail::take_field(header, "v", false, "v"), 1000, "v"));
    file.l = static_cast<int>(
        detail::parse_canonical_uint(detail::take_field(header, "l", false, "l"), 64, "l"));
    file.m = static_cast<int>(
        detail::parse_canonical_uint(detail::take_field(header, "m", false, "m"), 64, "m"));
    file.strategy = detail::take_field(header, "strategy", false, "strategy");
    if (file.strategy != "direct" && file.strategy != "constrained")
        throw FormatError("share file: unknown strategy");
    file.f_name = detail::take_field(header, "f", true, "f");
    if (!header.empty()) throw FormatError("share file: trailing header content");
    if (file.f_name.find(' ') != std::string::npos)
        throw FormatError("share file: f name must not contain spaces");

    if (file.n < 1 || file.t < 1 || file.t > file.n || file.v < 1 || file.v > file.t)
        throw FormatError("share file: need 1 <= v <= t <= n");
    if (file.l < 1 || file.m < 1) throw FormatError("share file: need l >= 1 and m >= 1");
    if (file.scheme == "kgh") {
        if (file.p != 0) throw FormatError("share file: kgh files carry p=0");
        if (file.t != file.n) throw FormatError("share file: kgh files carry t=n");
    } else if (file.p < 2) {
        throw FormatError("share file: shamir needs a prime p");
    }

    for (int i = 1; i <= file.n; ++i) {
        std::string_view line = next_line();
        std::string_view rest = line;
        if (rest.substr(0, 6) != "share ") throw FormatError("share file: expected share record");
        rest.remove_prefix(6);
        std::string_view id_text = detail::take_field(rest, "id", false, "share id");
        if (detail::parse_canonical_uint(id_text, 1000, "share id") !=
            static_cast<std::uint64_t>(i))
            throw FormatError("share file: share ids must be 1..n in order");
        std::string_view bits = detail::take_field(rest, "bits", true, "share bits");
        if (!rest.empty()) throw FormatError("share file: trailing share content");
        if (bits.size() != static_cast<std::size_t>(file.l + file.m))
            throw FormatError("share file: payload width != l+m");
        BitVector payload;
        try {
            payload = BitVector::parse(bits);
        } catch (const std::invalid_argument&) {
            throw FormatError("share file: payload must be bits");
        }
        auto [s, c] = split_extended(payload, file.l, file.m);
        file.shares.push_back({i, std::move(s), std::move(c)});
    }
    if (pos != text.size()) throw FormatError("share file: trailing content");
    return file;
}

// Scheme instance described by the header; rejects headers whose l does not
// match the scheme's own width.
inline SchemeInstance scheme_of(const ShareFile& file) {
    if (file.scheme == "shamir") {
        try {
            ShamirInstance inst(file.p, file.t, file.n);
            if (inst.l != file.l)
                throw FormatError("share file: header l inconsistent with p");
            return inst;
        } catch (const std::invalid_argument& e) {
            throw FormatError(std::string("share file: ") + e.what());
        }
    }
    return KghInstance(file.n, file.l);
}

inline VerificationStructure structure_of(const ShareFile& file) {
    return build_vtn_structure(file.v, file.t, file.n);
}

}  // namespace vss

#endif  // VSS_SHARE_FILE_HPP
