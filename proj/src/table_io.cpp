#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "merge_lab/adversary.hpp"

namespace merge_lab {

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

namespace {

constexpr std::string_view kMagic = "merge-lab-table";

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = line.find(',', start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

int parse_int(std::string_view s, const char* what) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || v < 0) {
    throw TableFormatError(std::string("malformed ") + what + ": '" + std::string(s) + "'");
  }
  return v;
}

int parse_field(std::string_view s, std::string_view name) {
  if (s.substr(0, name.size()) != name || s.size() <= name.size() || s[name.size()] != '=') {
    throw TableFormatError("malformed header field '" + std::string(s) + "'");
  }
  return parse_int(s.substr(name.size() + 1), "header bound");
}

}  // namespace

std::string export_csv_string(const AdversaryTable& table) {
  std::string out;
  out += std::string(kMagic) + ",v1,max_m=" + std::to_string(table.max_m()) +
         ",max_n=" + std::to_string(table.max_n()) + "\n";
  for (int l = 0; l < kConstraintCount; ++l) {
    for (int r = 0; r < kConstraintCount; ++r) {
      for (int m = 0; m <= table.max_m(); ++m) {
        for (int n = 0; n <= table.max_n(); ++n) {
          ProblemKey key{m, n, static_cast<Constraint>(l), static_cast<Constraint>(r)};
          std::uint16_t v = table.raw(key);
          out += to_token(key.left);
          out += ',';
          out += to_token(key.right);
          out += ',' + std::to_string(m) + ',' + std::to_string(n) + ',';
          out += v == AdversaryTable::kInvalid ? std::string("invalid") : std::to_string(v);
          out += '\n';
        }
      }
    }
  }
  out += "checksum," + hex64(fnv1a64(out)) + "\n";
  return out;
}

void export_csv(const AdversaryTable& table, const std::filesystem::path& path) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open " + path.string() + " for writing");
  std::string text = export_csv_string(table);
  file.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!file) throw IoError("write failed for " + path.string());
}

AdversaryTable import_csv_string(const std::string& text) {
  std::size_t header_end = text.find('\n');
  if (header_end == std::string::npos) throw TableFormatError("missing header line");
  auto header = split_commas(std::string_view(text).substr(0, header_end));
  if (header.size() != 4 || header[0] != kMagic) throw TableFormatError("not a table file");
  if (header[1] != "v1") {
    throw TableFormatError("unsupported format version '" + std::string(header[1]) + "'");
  }
  int max_m = parse_field(header[2], "max_m");
  int max_n = parse_field(header[3], "max_n");

  // Checksum line is the last line and covers every byte before it.
  std::string_view body(text);
  if (!body.empty() && body.back() == '\n') body.remove_suffix(1);
  std::size_t last_start = body.rfind('\n');
  if (last_start == std::string_view::npos) throw TableFormatError("missing checksum line");
  std::string_view checksum_line = body.substr(last_start + 1);
  auto checksum_fields = split_commas(checksum_line);
  if (checksum_fields.size() != 2 || checksum_fields[0] != "checksum") {
    throw TableFormatError("missing checksum line");
  }
  std::string_view covered = std::string_view(text).substr(0, last_start + 1);
  if (hex64(fnv1a64(covered)) != checksum_fields[1]) {
    throw TableFormatError("checksum mismatch");
  }

  AdversaryTable table(max_m, max_n);
  std::vector<bool> seen(static_cast<std::size_t>(kConstraintCount * kConstraintCount) *
                             (max_m + 1) * (max_n + 1),
                         false);
  std::size_t pos = header_end + 1;
  std::size_t rows = 0;
  while (pos < last_start + 1) {
    std::size_t end = text.find('\n', pos);
    std::string_view line = std::string_view(text).substr(pos, end - pos);
    pos = end + 1;
    auto f = split_commas(line);
    if (f.size() != 5) throw TableFormatError("malformed row '" + std::string(line) + "'");
    auto left = constraint_from_token(f[0]);
    auto right = constraint_from_token(f[1]);
    if (!left || !right) throw TableFormatError("bad constraint token in '" + std::string(line) + "'");
    ProblemKey key{parse_int(f[2], "m"), parse_int(f[3], "n"), *left, *right};
    if (!table.covers(key.m, key.n)) throw TableFormatError("row outside declared bounds");
    std::size_t slot = ((static_cast<std::size_t>(key.left) * kConstraintCount +
                         static_cast<std::size_t>(key.right)) *
                            (max_m + 1) +
                        key.m) *
                           (max_n + 1) +
                       key.n;
    if (seen[slot]) throw TableFormatError("duplicate row for " + to_string(key));
    seen[slot] = true;
    if (f[4] == "invalid") {
      if (is_consistent(key)) throw TableFormatError("consistent key marked invalid: " + to_string(key));
    } else {
      int v = parse_int(f[4], "value");
      if (!is_consistent(key)) throw TableFormatError("value stored for inconsistent key " + to_string(key));
      if (v > std::max(0, key.m + key.n - 1)) throw TableFormatError("value out of range for " + to_string(key));
      table.set_raw(key, static_cast<std::uint16_t>(v));
    }
    ++rows;
  }
  if (rows != seen.size()) throw TableFormatError("table file is missing rows");
  return table;
}

AdversaryTable import_csv(const std::filesystem::path& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << file.rdbuf();
  return import_csv_string(buf.str());
}

}  // namespace merge_lab
