/**
 * Copyright OntologyNavigator contributors. All Rights Reserved.
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef ONTONAV_ERRORS_HPP
#define ONTONAV_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ontonav {

  /// Base of every error raised by the library.
  class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  class MalformedLine : public Error {
   public:
    MalformedLine(std::size_t line_no, const std::string &why)
        : Error("line " + std::to_string(line_no) + ": " + why),
          line_no_(line_no) {}
    std::size_t line_no() const noexcept {
      return line_no_;
    }

   private:
    std::size_t line_no_;
  };

  class OrphanCode : public Error {
   public:
    explicit OrphanCode(std::string code)
        : Error("code '" + code + "' has no parent in the taxonomy"),
          code_(std::move(code)) {}
    const std::string &code() const noexcept {
      return code_;
    }

   private:
    std::string code_;
  };

  class UnknownNode : public Error {
   public:
    explicit UnknownNode(std::string id)
        : Error("unknown node '" + id + "'"), id_(std::move(id)) {}
    const std::string &id() const noexcept {
      return id_;
    }

   private:
    std::string id_;
  };

  /// Raised by descriptor attachment; lists every (term, code) offender.
  class UnknownCode : public Error {
   public:
    using Offender = std::pair<std::string, std::string>;

    explicit UnknownCode(std::vector<Offender> offenders)
        : Error(describe(offenders)), offenders_(std::move(offenders)) {}
    const std::vector<Offender> &offenders() const noexcept {
      return offenders_;
    }

   private:
    static std::string describe(const std::vector<Offender> &offenders) {
      std::string msg = "descriptors reference unknown codes:";
      for (const auto &[term, code] : offenders) {
        msg += " " + term + "->" + code;
      }
      return msg;
    }

    std::vector<Offender> offenders_;
  };

  class SchemaViolation : public Error {
   public:
    SchemaViolation(std::string path, const std::string &why)
        : Error("schema violation at " + path + ": " + why),
          path_(std::move(path)) {}
    const std::string &path() const noexcept {
      return path_;
    }

   private:
    std::string path_;
  };

  class UnknownLanguage : public Error {
   public:
    explicit UnknownLanguage(const std::string &tag)
        : Error("unknown language '" + tag + "'") {}
  };

  class XmlSyntax : public Error {
   public:
    XmlSyntax(std::size_t offset, const std::string &why)
        : Error("xml syntax error at byte " + std::to_string(offset) + ": "
                + why),
          offset_(offset) {}
    std::size_t offset() const noexcept {
      return offset_;
    }

   private:
    std::size_t offset_;
  };

  class EmptyText : public Error {
   public:
    EmptyText() : Error("text must not be empty") {}
  };

  /// BibTeX entry whose braces never close.
  class UnbalancedBraces : public Error {
   public:
    explicit UnbalancedBraces(std::string key)
        : Error("unbalanced braces in entry '" + key + "'"), key_(std::move(key)) {}
    const std::string &entry_key() const noexcept {
      return key_;
    }

   private:
    std::string key_;
  };

  /// Reported, not thrown, by the bibliographic parsers: the entry is skipped.
  class MissingTitle : public Error {
   public:
    explicit MissingTitle(std::string key)
        : Error("entry '" + key + "' has no title"), key_(std::move(key)) {}
    const std::string &entry_key() const noexcept {
      return key_;
    }

   private:
    std::string key_;
  };

  class UnknownProposal : public Error {
   public:
    explicit UnknownProposal(const std::string &id)
        : Error("unknown proposal '" + id + "'") {}
  };

  class NotCommitteeMember : public Error {
   public:
    explicit NotCommitteeMember(const std::string &member)
        : Error("'" + member + "' is not a committee member") {}
  };

  class AlreadyClosed : public Error {
   public:
    explicit AlreadyClosed(const std::string &id)
        : Error("proposal '" + id + "' is already closed") {}
  };

  class SelfValidation : public Error {
   public:
    explicit SelfValidation(const std::string &member)
        : Error("'" + member + "' cannot approve their own proposal") {}
  };

  class ClientUnavailable : public Error {
   public:
    using Error::Error;
  };

  class EmptyKeywords : public Error {
   public:
    EmptyKeywords() : Error("meta-query needs at least one keyword") {}
  };

  class BadTemplate : public Error {
   public:
    using Error::Error;
  };

  class UnknownArticle : public Error {
   public:
    explicit UnknownArticle(const std::string &id)
        : Error("unknown article '" + id + "'") {}
  };

  /// A persisted file could not be read or written.
  class StorageError : public Error {
   public:
    using Error::Error;
  };

  /// Invalid configuration or persisted artifact outside any schema above.
  class ConfigError : public Error {
   public:
    using Error::Error;
  };

}  // namespace ontonav

#endif  // ONTONAV_ERRORS_HPP
