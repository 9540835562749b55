#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace arxivroll::corpus {

// Just enough XML for Atom feeds: elements, attributes, text, CDATA,
// comments, processing instructions and the five named entities plus
// numeric character references. Namespaces are kept as name prefixes.
struct XmlNode {
  std::string name;
  std::vector<std::pair<std::string, std::string>> attributes;
  std::vector<XmlNode> children;
  std::string text;  // concatenated character data of this element only

  // Name without its namespace prefix.
  std::string_view local_name() const;
  const XmlNode* child(std::string_view local) const;
  std::string attribute(std::string_view name) const;
};

// Throws ParseError carrying the byte offset of the first malformed construct.
XmlNode parse_xml(std::string_view doc);

}  // namespace arxivroll::corpus
