//! Content-addressed on-disk cache for shells, quadrature tables, and
//! representation counts.
//!
//! Entries are keyed by arbitrary strings; the file name is the SHA-256
//! of the key, and the file holds the payload followed by the payload's
//! own SHA-256. Writers stage into a unique temporary file and `rename`
//! it into place, so concurrent readers only ever observe complete
//! entries and the last of two racing writers wins with identical
//! semantics. A corrupt entry (truncated file, checksum mismatch) is
//! treated as a miss: it is deleted with a warning so the caller
//! recomputes and overwrites.

use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::sync::atomic::{AtomicU64, Ordering};

use sha2::{Digest, Sha256};

use crate::{Error, Result};

/// Environment variable overriding the cache directory.
pub const CACHE_DIR_ENV: &str = "RESOLVENTLAB_CACHE_DIR";

const CHECKSUM_LEN: usize = 32;

static TMP_COUNTER: AtomicU64 = AtomicU64::new(0);

/// Cache root: `$RESOLVENTLAB_CACHE_DIR` if set, else
/// `.resolventlab-cache` under the current directory.
pub fn cache_dir() -> PathBuf {
    match std::env::var_os(CACHE_DIR_ENV) {
        Some(dir) if !dir.is_empty() => PathBuf::from(dir),
        _ => PathBuf::from(".resolventlab-cache"),
    }
}

fn entry_path(key: &str) -> PathBuf {
    let digest = Sha256::digest(key.as_bytes());
    let mut name = String::with_capacity(2 * digest.len() + 4);
    for b in digest {
        name.push_str(&format!("{b:02x}"));
    }
    name.push_str(".bin");
    cache_dir().join(name)
}

/// Store `payload` under `key`, atomically replacing any previous entry.
pub fn cache_put(key: &str, payload: &[u8]) -> Result<()> {
    let path = entry_path(key);
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    let tmp = path.with_extension(format!(
        "tmp.{}.{}",
        std::process::id(),
        TMP_COUNTER.fetch_add(1, Ordering::Relaxed)
    ));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(payload)?;
        f.write_all(&Sha256::digest(payload))?;
        f.sync_all()?;
    }
    fs::rename(&tmp, &path)?;
    Ok(())
}

/// Fetch the payload stored under `key`; `None` signals a miss. Corrupt
/// entries are removed (with a warning on stderr) and reported as a miss
/// so callers recompute and overwrite.
pub fn cache_get(key: &str) -> Result<Option<Vec<u8>>> {
    let path = entry_path(key);
    let mut data = match fs::read(&path) {
        Ok(d) => d,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    if data.len() >= CHECKSUM_LEN {
        let payload_len = data.len() - CHECKSUM_LEN;
        let stored = &data[payload_len..];
        if stored == Sha256::digest(&data[..payload_len]).as_slice() {
            data.truncate(payload_len);
            return Ok(Some(data));
        }
    }
    eprintln!("warning: cache entry for {key:?} is corrupt; discarding");
    let _ = fs::remove_file(&path);
    Ok(None)
}

/// One representation-count record: `r` lattice points of squared norm
/// `m` in dimension `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RepCountRecord {
    pub n: u8,
    pub m: u64,
    pub r: u64,
}

/// Serialize records in the on-disk layout: little-endian
/// `(n: u8, m: u64, r: u64)`, 17 bytes per record.
pub fn write_rep_count_records(records: &[RepCountRecord]) -> Vec<u8> {
    let mut out = Vec::with_capacity(records.len() * 17);
    for rec in records {
        out.push(rec.n);
        out.extend_from_slice(&rec.m.to_le_bytes());
        out.extend_from_slice(&rec.r.to_le_bytes());
    }
    out
}

/// Parse the binary record layout produced by [`write_rep_count_records`].
pub fn read_rep_count_records(bytes: &[u8]) -> Result<Vec<RepCountRecord>> {
    if bytes.len() % 17 != 0 {
        return Err(Error::CacheCorrupt {
            key: format!("rep-count blob of {} bytes (not a multiple of 17)", bytes.len()),
        });
    }
    let mut out = Vec::with_capacity(bytes.len() / 17);
    for chunk in bytes.chunks_exact(17) {
        out.push(RepCountRecord {
            n: chunk[0],
            m: u64::from_le_bytes(chunk[1..9].try_into().expect("8 bytes")),
            r: u64::from_le_bytes(chunk[9..17].try_into().expect("8 bytes")),
        });
    }
    Ok(out)
}

/// Representation counts `r_n(m)` for `m = 0..=m_max`, served from the
/// cache when a previous run stored them and recomputed (then stored)
/// otherwise.
pub fn cached_rep_counts(dim: u32, m_max: u64) -> Result<Vec<u64>> {
    let key = format!("rep-counts/n{dim}/m{m_max}");
    if let Some(bytes) = cache_get(&key)? {
        match read_rep_count_records(&bytes) {
            Ok(records) => {
                let consistent = records.len() as u64 == m_max + 1
                    && records
                        .iter()
                        .enumerate()
                        .all(|(i, rec)| rec.n == dim as u8 && rec.m == i as u64);
                if consistent {
                    return Ok(records.into_iter().map(|rec| rec.r).collect());
                }
                eprintln!("warning: cache entry {key:?} holds mismatched records; recomputing");
            }
            Err(_) => {
                eprintln!("warning: cache entry {key:?} does not parse; recomputing");
            }
        }
    }
    let counts = crate::spectra::rep_counts(dim, m_max)?;
    let records: Vec<RepCountRecord> = counts
        .iter()
        .enumerate()
        .map(|(m, &r)| RepCountRecord { n: dim as u8, m: m as u64, r })
        .collect();
    cache_put(&key, &write_rep_count_records(&records))?;
    Ok(counts)
}
