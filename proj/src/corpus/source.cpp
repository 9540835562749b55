#include "arxivroll/corpus/source.hpp"

#include <zlib.h>

#include <map>

#include "arxivroll/common.hpp"

namespace arxivroll::corpus {

std::string gunzip(std::string_view bytes) {
  z_stream zs{};
  if (inflateInit2(&zs, 16 + MAX_WBITS) != Z_OK) {
    throw DomainError("zlib initialisation failed");
  }
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(bytes.data()));
  zs.avail_in = static_cast<uInt>(bytes.size());
  std::string out;
  char buf[1 << 15];
  int rc;
  do {
    zs.next_out = reinterpret_cast<Bytef*>(buf);
    zs.avail_out = sizeof buf;
    rc = inflate(&zs, Z_NO_FLUSH);
    if (rc != Z_OK && rc != Z_STREAM_END) {
      inflateEnd(&zs);
      throw DomainError("corrupt gzip stream");
    }
    out.append(buf, sizeof buf - zs.avail_out);
  } while (rc != Z_STREAM_END && (zs.avail_in > 0 || zs.avail_out == 0));
  inflateEnd(&zs);
  if (rc != Z_STREAM_END) throw DomainError("truncated gzip stream");
  return out;
}

namespace {

bool is_gzip(std::string_view b) {
  return b.size() >= 2 && static_cast<unsigned char>(b[0]) == 0x1f &&
         static_cast<unsigned char>(b[1]) == 0x8b;
}

bool is_tar(std::string_view b) {
  return b.size() >= 512 && b.substr(257, 5) == "ustar";
}

std::size_t parse_octal(std::string_view field) {
  std::size_t v = 0;
  for (char c : field) {
    if (c < '0' || c > '7') break;
    v = v * 8 + static_cast<std::size_t>(c - '0');
  }
  return v;
}

std::string field(std::string_view header, std::size_t off, std::size_t len) {
  std::string_view f = header.substr(off, len);
  std::size_t nul = f.find('\0');
  return std::string(f.substr(0, nul));
}

std::map<std::string, std::string> tar_members(std::string_view b) {
  std::map<std::string, std::string> files;
  std::size_t pos = 0;
  while (pos + 512 <= b.size()) {
    std::string_view h = b.substr(pos, 512);
    if (h.find_first_not_of('\0') == std::string_view::npos) break;
    std::string name = field(h, 0, 100);
    std::string prefix = field(h, 345, 155);
    if (!prefix.empty()) name = prefix + "/" + name;
    std::size_t size = parse_octal(h.substr(124, 12));
    char type = h[156];
    pos += 512;
    if (pos + size > b.size()) throw DomainError("truncated tar archive");
    if (type == '0' || type == '\0') {
      files.emplace(name, std::string(b.substr(pos, size)));
    }
    pos += (size + 511) / 512 * 512;
  }
  return files;
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.substr(s.size() - suffix.size()) == suffix;
}

std::string splice_inputs(const std::string& main,
                          const std::map<std::string, std::string>& files) {
  std::string out;
  std::size_t pos = 0;
  while (pos < main.size()) {
    std::size_t hit = std::string::npos;
    std::size_t cmd_len = 0;
    for (std::string_view cmd : {"\\input{", "\\include{"}) {
      std::size_t f = main.find(cmd, pos);
      if (f < hit) {
        hit = f;
        cmd_len = cmd.size();
      }
    }
    if (hit == std::string::npos) break;
    std::size_t close = main.find('}', hit);
    if (close == std::string::npos) break;
    std::string target = trim(main.substr(hit + cmd_len, close - hit - cmd_len));
    out.append(main, pos, hit - pos);
    auto it = files.find(target);
    if (it == files.end()) it = files.find(target + ".tex");
    if (it != files.end()) {
      out += "\n";
      out += it->second;
      out += "\n";
    }
    pos = close + 1;
  }
  out.append(main, pos, std::string::npos);
  return out;
}

}  // namespace

std::optional<std::string> unpack_latex_source(std::string_view bytes) {
  std::string data = is_gzip(bytes) ? gunzip(bytes) : std::string(bytes);
  if (is_tar(data)) {
    auto files = tar_members(data);
    for (const auto& [name, content] : files) {
      if (ends_with(name, ".tex") &&
          content.find("\\begin{document}") != std::string::npos) {
        return splice_inputs(content, files);
      }
    }
    return std::nullopt;
  }
  if (data.rfind("%PDF", 0) == 0) return std::nullopt;
  if (data.find('\\') == std::string::npos) return std::nullopt;
  return data;
}

}  // namespace arxivroll::corpus
