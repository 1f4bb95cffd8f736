#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace qwlab {

// Emitted as a comment block at the head of every output file. The timestamp is
// the single line allowed to differ between reruns of an identical config.
struct RunManifest {
    std::string version;
    std::string generated;             // ISO-8601 UTC, or "" to omit (tests)
    std::vector<std::uint64_t> seeds;
    std::vector<std::string> config_echo;
    std::string config_sha1;

    static RunManifest make(const std::vector<std::string>& config_lines,
                            const std::vector<std::uint64_t>& seeds);
    void write(std::ostream& os) const;
};

// Digest of "blob <len>\0<content>", hex. Identical config -> identical hash.
std::string sha1_blob_hex(const std::string& content);

std::string iso8601_utc_now();

}
