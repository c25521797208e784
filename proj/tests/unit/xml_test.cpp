#include <doctest.h>

#include <sstream>

#include "ontonav/errors.hpp"
#include "ontonav/xml/pull_parser.hpp"

using namespace ontonav;
using ontonav::xml::EventType;
using ontonav::xml::PullParser;

namespace {

  // Flattens events into a compact trace: "<a k=v>", "'text'", "</a>".
  std::string trace(const std::string &doc, std::size_t chunk = 64 * 1024) {
    std::istringstream in(doc);
    PullParser p(in, chunk);
    std::string out;
    for (;;) {
      const auto &ev = p.next();
      switch (ev.type) {
        case EventType::start_element:
          out += "<" + ev.name;
          for (const auto &[k, v] : ev.attributes) {
            out += " " + k + "=" + v;
          }
          out += ">";
          break;
        case EventType::end_element: out += "</" + ev.name + ">"; break;
        case EventType::text: out += "'" + ev.text + "'"; break;
        case EventType::end_document: return out;
      }
    }
  }

}  // namespace

TEST_CASE("pull parser events") {
  CHECK(trace("<a x=\"1\" y='two'><b/>hi</a>") == "<a x=1 y=two><b></b>'hi'</a>");
  CHECK(trace("<?xml version=\"1.0\"?>\n<!-- c --><!DOCTYPE dblp SYSTEM \"dblp.dtd\"><r/>\n")
        == "<r></r>");
  CHECK(trace("<!DOCTYPE r [<!ENTITY x \"y\">]><r>a<!-- no -->b</r>") == "<r>'a''b'</r>");
  CHECK(trace("<r><![CDATA[<&>]]></r>") == "<r>'<&>'</r>");
}

TEST_CASE("pull parser entities") {
  CHECK(trace("<r a=\"&lt;&amp;&quot;\">&#65;&#x42;&eacute;&apos;</r>")
        == "<r a=<&\">'AB\xC3\xA9''</r>");
  CHECK(trace("<r>&uuml;&ouml;&szlig;</r>") == "<r>'\xC3\xBC\xC3\xB6\xC3\x9F'</r>");
  CHECK_THROWS_AS(trace("<r>&bogus;</r>"), XmlSyntax);
}

TEST_CASE("pull parser is independent of chunk size") {
  std::string doc = "<dblp><article key=\"k/1\"><title>T&amp;t</title><year>2001</year>"
                    "</article><!-- x --><inproceedings key=\"k/2\"><title><i>A</i> b</title>"
                    "</inproceedings></dblp>";
  auto reference = trace(doc);
  for (std::size_t chunk : {1, 2, 3, 7, 16}) {
    CHECK(trace(doc, chunk) == reference);
  }
}

TEST_CASE("pull parser syntax errors") {
  for (const char *bad : {"<a></b>", "<a>", "text<a/>", "<a/><b/>", "<a x=1/>", "<a x=\"1\" x=\"2\"/>",
                          "", "<a><!-- unterminated</a>"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(trace(bad), XmlSyntax);
  }
  try {
    trace("<a></b>");
  } catch (const XmlSyntax &e) {
    CHECK(e.offset() == 3);
  }
}

TEST_CASE("pull parser memory stays bounded") {
  std::string doc = "<dblp>";
  for (int i = 0; i < 20000; ++i) {
    doc += "<article key=\"x/" + std::to_string(i) + "\"><title>Title number " + std::to_string(i)
         + "</title></article>\n";
  }
  doc += "</dblp>";
  std::istringstream in(doc);
  PullParser p(in, 4096);
  std::size_t titles = 0;
  for (const auto *ev = &p.next(); ev->type != EventType::end_document; ev = &p.next()) {
    titles += ev->type == EventType::start_element && ev->name == "title";
  }
  CHECK(titles == 20000);
  CHECK(p.peak_buffered_bytes() < 16 * 1024);
}
