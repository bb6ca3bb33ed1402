//! JSON input documents. Every command reads one object and picks the
//! fields it needs; matrix commands also accept a bare nested array.

use std::path::Path;

use fibertor::covers::{AbelianQuotient, CoverSpec};
use fibertor::{Automorphism, FreeWord, IntMatrix, IntPoly, SurfacePresentation};
use num_bigint::BigInt;
use serde_json::Value;

use crate::CliError;

pub struct Document(Value);

/// Reads `arg` as inline JSON when it looks like JSON, from stdin for `-`,
/// and as a file path otherwise.
pub fn load(arg: &str) -> Result<Document, CliError> {
    let trimmed = arg.trim_start();
    let text = if trimmed.starts_with('{') || trimmed.starts_with('[') {
        arg.to_string()
    } else if arg == "-" {
        std::io::read_to_string(std::io::stdin()).map_err(|e| CliError::Io(format!("reading stdin: {e}")))?
    } else {
        std::fs::read_to_string(Path::new(arg))
            .map_err(|e| CliError::Io(format!("reading {arg}: {e}")))?
    };
    let v: Value = serde_json::from_str(&text).map_err(|e| CliError::Schema(format!("invalid JSON: {e}")))?;
    Ok(Document(v))
}

fn schema<T>(msg: impl Into<String>) -> Result<T, CliError> {
    Err(CliError::Schema(msg.into()))
}

fn integer(v: &Value, what: &str) -> Result<BigInt, CliError> {
    match v {
        Value::Number(n) => match (n.as_i64(), n.as_u64()) {
            (Some(x), _) => Ok(BigInt::from(x)),
            (None, Some(x)) => Ok(BigInt::from(x)),
            _ => schema(format!("{what}: {n} is not an integer")),
        },
        Value::String(s) => s
            .trim()
            .parse()
            .or_else(|_| schema(format!("{what}: {s:?} is not an integer"))),
        other => schema(format!("{what}: expected an integer, got {other}")),
    }
}

fn small(v: &Value, what: &str) -> Result<u64, CliError> {
    v.as_u64().map_or_else(|| schema(format!("{what}: expected a nonnegative integer")), Ok)
}

pub fn matrix_value(v: &Value) -> Result<IntMatrix, CliError> {
    let Some(rows) = v.as_array() else {
        return schema("matrix must be an array of rows");
    };
    let mut parsed = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let Some(row) = row.as_array() else {
            return schema(format!("matrix row {i} is not an array"));
        };
        parsed.push(
            row.iter()
                .map(|x| integer(x, "matrix entry"))
                .collect::<Result<Vec<_>, _>>()?,
        );
    }
    IntMatrix::from_rows(&parsed).map_err(|e| CliError::Schema(e.to_string()))
}

fn fiber_value(v: &Value) -> Result<SurfacePresentation, CliError> {
    let fiber: SurfacePresentation = match v {
        Value::Object(o) if o.get("kind").and_then(Value::as_str) == Some("closed") && !o.contains_key("rank") => {
            let g = o.get("genus").map(|g| small(g, "genus")).transpose()?;
            let Some(g) = g else {
                return schema("closed fiber needs a genus");
            };
            return SurfacePresentation::closed(g as usize).map_err(CliError::Domain);
        }
        _ => serde_json::from_value(v.clone()).map_err(|e| CliError::Schema(format!("fiber: {e}")))?,
    };
    fiber.validate().map_err(CliError::Domain)?;
    Ok(fiber)
}

fn automorphism_value(v: &Value) -> Result<Automorphism, CliError> {
    let Some(o) = v.as_object() else {
        return schema("automorphism must be an object");
    };
    if let Some(b) = o.get("braid") {
        let Some(word) = b.as_str() else {
            return schema("braid must be a string such as \"s1 S2\"");
        };
        let Some(n) = o.get("strands") else {
            return schema("braid needs a strand count");
        };
        return Automorphism::from_braid_word(small(n, "strands")? as usize, word).map_err(CliError::Domain);
    }
    let Some(images) = o.get("images").and_then(Value::as_array) else {
        return schema("automorphism needs \"images\" or \"braid\"");
    };
    let words = images
        .iter()
        .map(|w| match w.as_str() {
            Some(s) => FreeWord::parse(s).map_err(|e| CliError::Schema(e.to_string())),
            None => schema("images must be strings"),
        })
        .collect::<Result<Vec<_>, _>>()?;
    let fiber = match o.get("fiber") {
        Some(f) => fiber_value(f)?,
        None => SurfacePresentation::free(words.len()).map_err(CliError::Domain)?,
    };
    Automorphism::from_images(fiber, words).map_err(CliError::Domain)
}

impl Document {
    fn field(&self, key: &str) -> Option<&Value> {
        self.0.as_object().and_then(|o| o.get(key))
    }

    pub fn matrix(&self) -> Result<IntMatrix, CliError> {
        if self.0.is_array() {
            return matrix_value(&self.0);
        }
        if let Some(m) = self.field("matrix") {
            return matrix_value(m);
        }
        if self.field("automorphism").is_some() || self.field("images").is_some() || self.field("braid").is_some() {
            return Ok(self.automorphism()?.abelianization_matrix());
        }
        schema("expected a \"matrix\" field or an automorphism")
    }

    /// `poly` coefficients in ascending degree, or the characteristic
    /// polynomial of `matrix`.
    pub fn poly(&self) -> Result<IntPoly, CliError> {
        if let Some(p) = self.field("poly") {
            let Some(cs) = p.as_array() else {
                return schema("poly must be an array of coefficients, constant term first");
            };
            let cs = cs
                .iter()
                .map(|c| integer(c, "coefficient"))
                .collect::<Result<Vec<_>, _>>()?;
            return Ok(IntPoly::new(cs));
        }
        let m = self.matrix()?;
        m.char_poly().map_err(CliError::Domain)
    }

    pub fn fiber_for(&self, size: usize) -> Result<SurfacePresentation, CliError> {
        match self.field("fiber") {
            Some(f) => fiber_value(f),
            None => SurfacePresentation::free(size).map_err(CliError::Domain),
        }
    }

    pub fn automorphism(&self) -> Result<Automorphism, CliError> {
        match self.field("automorphism") {
            Some(a) => automorphism_value(a),
            None => automorphism_value(&self.0),
        }
    }

    pub fn has_automorphism(&self) -> bool {
        self.field("automorphism").is_some() || self.field("images").is_some() || self.field("braid").is_some()
    }

    /// The `cover` field: `{"homology": N}`, `{"coinvariant": N}`,
    /// `{"abelian": {"moduli": [..], "images": [[..], ..]}}` or
    /// `{"permutation": [[..], ..]}`.
    pub fn cover(&self, base: SurfacePresentation, a: Option<&Automorphism>) -> Result<CoverSpec, CliError> {
        let Some(c) = self.field("cover").and_then(Value::as_object) else {
            return schema("expected a \"cover\" object");
        };
        if let Some(n) = c.get("homology") {
            return CoverSpec::homology(base, small(n, "homology modulus")?).map_err(CliError::Domain);
        }
        if let Some(n) = c.get("coinvariant") {
            let Some(a) = a else {
                return schema("a coinvariant cover needs an automorphism");
            };
            return fibertor::covers::coinvariant_cover_spec(a, small(n, "coinvariant modulus")?)
                .map_err(CliError::Domain);
        }
        if let Some(ab) = c.get("abelian") {
            let moduli = ab
                .get("moduli")
                .and_then(Value::as_array)
                .map_or_else(|| schema("abelian cover needs moduli"), Ok)?
                .iter()
                .map(|m| small(m, "modulus"))
                .collect::<Result<Vec<_>, _>>()?;
            let images = ab
                .get("images")
                .and_then(Value::as_array)
                .map_or_else(|| schema("abelian cover needs images"), Ok)?
                .iter()
                .map(|img| {
                    img.as_array()
                        .map_or_else(|| schema("each image must be an array"), Ok)?
                        .iter()
                        .map(|x| x.as_i64().map_or_else(|| schema("image entries must be integers"), Ok))
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()?;
            let q = AbelianQuotient::new(moduli, images).map_err(CliError::Domain)?;
            return CoverSpec::abelian(base, q).map_err(CliError::Domain);
        }
        if let Some(p) = c.get("permutation") {
            let perms = p
                .as_array()
                .map_or_else(|| schema("permutation cover needs an array of permutations"), Ok)?
                .iter()
                .map(|row| {
                    row.as_array()
                        .map_or_else(|| schema("each permutation must be an array"), Ok)?
                        .iter()
                        .map(|x| small(x, "permutation entry").map(|x| x as usize))
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()?;
            return CoverSpec::permutation(base, perms).map_err(CliError::Domain);
        }
        schema("cover must have one of homology, coinvariant, abelian, permutation")
    }
}
