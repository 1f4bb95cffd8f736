#include "qwlab/manifest.hpp"

#include <cstdio>
#include <cstring>
#include <ctime>
#include <ostream>

#include "qwlab/version.hpp"

namespace qwlab {

namespace {

// SHA-1 per RFC 3174. Inputs here are short config echoes, so the
// straightforward single-buffer implementation is plenty.
struct Sha1 {
    std::uint32_t h[5] = {0x67452301u, 0xEFCDAB89u, 0x98BADCFEu, 0x10325476u,
                          0xC3D2E1F0u};
    unsigned char block[64];
    std::size_t block_len = 0;
    std::uint64_t total_bits = 0;

    static std::uint32_t rol(std::uint32_t x, int s) {
        return (x << s) | (x >> (32 - s));
    }

    void compress() {
        std::uint32_t w[80];
        for (int i = 0; i < 16; ++i)
            w[i] = (std::uint32_t(block[4 * i]) << 24) |
                   (std::uint32_t(block[4 * i + 1]) << 16) |
                   (std::uint32_t(block[4 * i + 2]) << 8) |
                   std::uint32_t(block[4 * i + 3]);
        for (int i = 16; i < 80; ++i)
            w[i] = rol(w[i - 3] ^ w[i - 8] ^ w[i - 14] ^ w[i - 16], 1);
        std::uint32_t a = h[0], b = h[1], c = h[2], d = h[3], e = h[4];
        for (int i = 0; i < 80; ++i) {
            std::uint32_t f, k;
            if (i < 20) {
                f = (b & c) | (~b & d);
                k = 0x5A827999u;
            } else if (i < 40) {
                f = b ^ c ^ d;
                k = 0x6ED9EBA1u;
            } else if (i < 60) {
                f = (b & c) | (b & d) | (c & d);
                k = 0x8F1BBCDCu;
            } else {
                f = b ^ c ^ d;
                k = 0xCA62C1D6u;
            }
            std::uint32_t t = rol(a, 5) + f + e + k + w[i];
            e = d;
            d = c;
            c = rol(b, 30);
            b = a;
            a = t;
        }
        h[0] += a;
        h[1] += b;
        h[2] += c;
        h[3] += d;
        h[4] += e;
        block_len = 0;
    }

    void update(const void* data, std::size_t len) {
        const unsigned char* p = static_cast<const unsigned char*>(data);
        total_bits += std::uint64_t(len) * 8;
        while (len > 0) {
            std::size_t take = 64 - block_len;
            if (take > len) take = len;
            std::memcpy(block + block_len, p, take);
            block_len += take;
            p += take;
            len -= take;
            if (block_len == 64) compress();
        }
    }

    std::string hex_digest() {
        const std::uint64_t bits = total_bits;
        unsigned char pad = 0x80;
        update(&pad, 1);
        unsigned char zero = 0;
        while (block_len != 56) update(&zero, 1);
        unsigned char lenbuf[8];
        for (int i = 0; i < 8; ++i)
            lenbuf[i] = (unsigned char)(bits >> (56 - 8 * i));
        update(lenbuf, 8);
        char out[41];
        for (int i = 0; i < 5; ++i)
            std::snprintf(out + 8 * i, 9, "%08x", h[i]);
        return std::string(out, 40);
    }
};

} // namespace

std::string sha1_blob_hex(const std::string& content) {
    Sha1 s;
    char header[32];
    int n = std::snprintf(header, sizeof header, "blob %zu", content.size());
    s.update(header, std::size_t(n) + 1); // include the NUL
    s.update(content.data(), content.size());
    return s.hex_digest();
}

std::string iso8601_utc_now() {
    std::time_t now = std::time(nullptr);
    std::tm tm_utc;
    gmtime_r(&now, &tm_utc);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

RunManifest RunManifest::make(const std::vector<std::string>& config_lines,
                              const std::vector<std::uint64_t>& seeds) {
    RunManifest m;
    m.version = version_string;
    m.generated = iso8601_utc_now();
    m.seeds = seeds;
    m.config_echo = config_lines;
    std::string joined;
    for (const auto& l : config_lines) {
        joined += l;
        joined += '\n';
    }
    m.config_sha1 = sha1_blob_hex(joined);
    return m;
}

void RunManifest::write(std::ostream& os) const {
    os << "# " << version << '\n';
    if (!generated.empty()) os << "# generated=" << generated << '\n';
    os << "# seed=";
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        if (i) os << ',';
        os << seeds[i];
    }
    os << '\n';
    os << "# config-sha1=" << config_sha1 << '\n';
    for (const auto& l : config_echo) os << "# config: " << l << '\n';
}

}
