#include "arxivroll/corpus/xml.hpp"

#include <cctype>
#include <cstdint>

#include "arxivroll/common.hpp"

namespace arxivroll::corpus {

std::string_view XmlNode::local_name() const {
  std::string_view n = name;
  std::size_t colon = n.find(':');
  return colon == std::string_view::npos ? n : n.substr(colon + 1);
}

const XmlNode* XmlNode::child(std::string_view local) const {
  for (const auto& c : children) {
    if (c.local_name() == local) return &c;
  }
  return nullptr;
}

std::string XmlNode::attribute(std::string_view key) const {
  for (const auto& [k, v] : attributes) {
    if (k == key) return v;
  }
  return {};
}

namespace {

void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

class XmlParser {
 public:
  explicit XmlParser(std::string_view doc) : s_(doc) {}

  XmlNode parse() {
    skip_misc();
    if (pos_ >= s_.size() || s_[pos_] != '<') fail("expected root element");
    XmlNode root = element();
    skip_misc();
    if (pos_ != s_.size()) fail("content after root element");
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("malformed XML: " + what, pos_);
  }

  bool starts_with(std::string_view p) const {
    return s_.substr(pos_, p.size()) == p;
  }

  void skip_ws() {
    while (pos_ < s_.size() &&
           std::isspace(static_cast<unsigned char>(s_[pos_]))) {
      ++pos_;
    }
  }

  void skip_until(std::string_view terminator) {
    std::size_t end = s_.find(terminator, pos_);
    if (end == std::string_view::npos) fail("unterminated construct");
    pos_ = end + terminator.size();
  }

  // Whitespace, comments, processing instructions and DOCTYPE outside the
  // root element.
  void skip_misc() {
    for (;;) {
      skip_ws();
      if (starts_with("<?")) {
        skip_until("?>");
      } else if (starts_with("<!--")) {
        skip_until("-->");
      } else if (starts_with("<!DOCTYPE")) {
        skip_until(">");
      } else {
        return;
      }
    }
  }

  std::string name() {
    std::size_t start = pos_;
    while (pos_ < s_.size()) {
      char c = s_[pos_];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == ':' ||
          c == '_' || c == '-' || c == '.' ||
          static_cast<unsigned char>(c) >= 0x80) {
        ++pos_;
      } else {
        break;
      }
    }
    if (pos_ == start) fail("expected a name");
    return std::string(s_.substr(start, pos_ - start));
  }

  void entity(std::string& out) {
    std::size_t semi = s_.find(';', pos_);
    if (semi == std::string_view::npos || semi - pos_ > 12) {
      fail("unterminated entity");
    }
    std::string_view ent = s_.substr(pos_ + 1, semi - pos_ - 1);
    if (ent == "amp") out += '&';
    else if (ent == "lt") out += '<';
    else if (ent == "gt") out += '>';
    else if (ent == "quot") out += '"';
    else if (ent == "apos") out += '\'';
    else if (!ent.empty() && ent[0] == '#') {
      std::uint32_t cp = 0;
      bool hex = ent.size() > 1 && (ent[1] == 'x' || ent[1] == 'X');
      std::string_view digits = ent.substr(hex ? 2 : 1);
      if (digits.empty()) fail("empty character reference");
      for (char c : digits) {
        int v;
        if (c >= '0' && c <= '9') v = c - '0';
        else if (hex && c >= 'a' && c <= 'f') v = c - 'a' + 10;
        else if (hex && c >= 'A' && c <= 'F') v = c - 'A' + 10;
        else fail("bad character reference");
        cp = cp * (hex ? 16 : 10) + static_cast<std::uint32_t>(v);
        if (cp > 0x10FFFF) fail("character reference out of range");
      }
      append_utf8(out, cp);
    } else {
      fail("unknown entity &" + std::string(ent) + ";");
    }
    pos_ = semi + 1;
  }

  std::string attribute_value() {
    if (pos_ >= s_.size() || (s_[pos_] != '"' && s_[pos_] != '\'')) {
      fail("expected quoted attribute value");
    }
    char quote = s_[pos_++];
    std::string out;
    while (pos_ < s_.size() && s_[pos_] != quote) {
      if (s_[pos_] == '&') {
        entity(out);
      } else if (s_[pos_] == '<') {
        fail("'<' in attribute value");
      } else {
        out += s_[pos_++];
      }
    }
    if (pos_ >= s_.size()) fail("unterminated attribute value");
    ++pos_;
    return out;
  }

  XmlNode element() {
    ++pos_;  // '<'
    XmlNode node;
    node.name = name();
    for (;;) {
      skip_ws();
      if (pos_ >= s_.size()) fail("unterminated start tag");
      if (starts_with("/>")) {
        pos_ += 2;
        return node;
      }
      if (s_[pos_] == '>') {
        ++pos_;
        break;
      }
      std::string key = name();
      skip_ws();
      if (pos_ >= s_.size() || s_[pos_] != '=') fail("expected '='");
      ++pos_;
      skip_ws();
      node.attributes.emplace_back(std::move(key), attribute_value());
    }
    content(node);
    return node;
  }

  void content(XmlNode& node) {
    while (pos_ < s_.size()) {
      char c = s_[pos_];
      if (c == '&') {
        entity(node.text);
      } else if (c != '<') {
        node.text += c;
        ++pos_;
      } else if (starts_with("</")) {
        std::size_t tag_at = pos_;
        pos_ += 2;
        std::string closing = name();
        skip_ws();
        if (pos_ >= s_.size() || s_[pos_] != '>') fail("bad end tag");
        if (closing != node.name) {
          pos_ = tag_at;
          fail("mismatched end tag </" + closing + "> for <" + node.name +
               ">");
        }
        ++pos_;
        return;
      } else if (starts_with("<!--")) {
        skip_until("-->");
      } else if (starts_with("<![CDATA[")) {
        std::size_t start = pos_ + 9;
        skip_until("]]>");
        node.text.append(s_.substr(start, pos_ - 3 - start));
      } else if (starts_with("<?")) {
        skip_until("?>");
      } else {
        node.children.push_back(element());
      }
    }
    fail("unclosed element <" + node.name + ">");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

XmlNode parse_xml(std::string_view doc) { return XmlParser(doc).parse(); }

}  // namespace arxivroll::corpus
